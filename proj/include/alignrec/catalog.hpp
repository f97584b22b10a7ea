#pragma once

#include <cstdint>
#include <cstdio>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "alignrec/common.hpp"

namespace alignrec {

struct Interaction {
    std::string user_id;
    std::string item_id;
    std::int64_t ts = 0;
    std::optional<std::string> review;
};

struct ItemRecord {
    std::string item_id;
    std::string title;
    std::string description;
};

// Per-user chronological item sequence, capped at max_history (most recent kept).
// reviews runs parallel to items; entries are empty for interactions without review text.
struct UserHistory {
    std::string user_id;
    std::vector<std::string> items;
    std::vector<std::optional<std::string>> reviews;
};

struct EvalPair {
    std::string user_id;
    std::vector<std::string> prompt_items;
    std::string label_item;
    std::optional<std::string> label_review;
};

struct Split {
    std::vector<UserHistory> train_histories;
    std::vector<EvalPair> eval_pairs;
    std::size_t skipped_users = 0;
};

// interactions.jsonl: {"user_id":..., "item_id":..., "ts":..., "review":...?} per line.
std::vector<Interaction> load_interactions(const std::string& path);
void save_interactions(const std::string& path, std::span<const Interaction> interactions);

// items.jsonl: {"item_id":..., "title":..., "description":...} per line.
std::vector<ItemRecord> load_items(const std::string& path);
void save_items(const std::string& path, std::span<const ItemRecord> items);

// Groups interactions per user, sorts by timestamp (stable on ties), keeps the
// last max_history items. Users appear in first-seen input order.
std::vector<UserHistory> build_histories(std::span<const Interaction> interactions,
                                         int max_history = 20);

// Leave-one-out: the chronologically last item becomes the eval label, the rest
// the train history. Users with fewer than 3 items are skipped entirely.
Split split_leave_one_out(std::span<const UserHistory> histories);

struct SynthConfig {
    int n_users = 0;
    int n_items = 0;
    double chain_noise = 0.0;
    std::uint64_t seed = 0;
    int min_len = 5;
    int max_len = 15;
};

struct SynthData {
    std::vector<Interaction> interactions;
    std::vector<ItemRecord> items;
    // Planted successor map: item index -> next item index (a seeded permutation).
    std::vector<int> successor;
};

// Each user's sequence follows successor[] with probability 1-chain_noise, else
// jumps to a uniformly random item. Fully deterministic for a fixed config.
SynthData generate_synthetic(const SynthConfig& config);

inline std::string synth_item_id(int index) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "item_%05d", index);
    return std::string(buf);
}

inline std::string synth_user_id(int index) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "user_%05d", index);
    return std::string(buf);
}

}  // namespace alignrec
