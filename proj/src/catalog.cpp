#include "alignrec/catalog.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

namespace alignrec {

namespace {

using nlohmann::json;

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open file: " + path);
    return in;
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot open file for writing: " + path);
    return out;
}

json parse_line(const std::string& line, std::size_t line_no) {
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
        throw DataError("line " + std::to_string(line_no) + ": malformed JSON object");
    }
    return j;
}

std::string require_string(const json& j, const char* field, std::size_t line_no) {
    auto it = j.find(field);
    if (it == j.end() || !it->is_string()) {
        throw DataError("line " + std::to_string(line_no) + ": missing field " + field);
    }
    std::string v = it->get<std::string>();
    if (v.empty()) {
        throw DataError("line " + std::to_string(line_no) + ": empty field " + field);
    }
    return v;
}

}  // namespace

std::vector<Interaction> load_interactions(const std::string& path) {
    auto in = open_input(path);
    std::vector<Interaction> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        json j = parse_line(line, line_no);
        Interaction it;
        it.user_id = require_string(j, "user_id", line_no);
        it.item_id = require_string(j, "item_id", line_no);
        auto ts = j.find("ts");
        if (ts == j.end() || !ts->is_number_integer()) {
            throw DataError("line " + std::to_string(line_no) + ": missing field ts");
        }
        it.ts = ts->get<std::int64_t>();
        if (it.ts < 0) {
            throw DataError("line " + std::to_string(line_no) + ": negative ts");
        }
        if (auto r = j.find("review"); r != j.end() && r->is_string()) {
            it.review = r->get<std::string>();
        }
        out.push_back(std::move(it));
    }
    return out;
}

void save_interactions(const std::string& path, std::span<const Interaction> interactions) {
    auto out = open_output(path);
    for (const auto& it : interactions) {
        json j{{"user_id", it.user_id}, {"item_id", it.item_id}, {"ts", it.ts}};
        if (it.review) j["review"] = *it.review;
        out << j.dump() << '\n';
    }
}

std::vector<ItemRecord> load_items(const std::string& path) {
    auto in = open_input(path);
    std::vector<ItemRecord> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        json j = parse_line(line, line_no);
        ItemRecord rec;
        rec.item_id = require_string(j, "item_id", line_no);
        auto title = j.find("title");
        if (title == j.end() || !title->is_string()) {
            throw DataError("line " + std::to_string(line_no) + ": missing field title");
        }
        rec.title = title->get<std::string>();
        auto desc = j.find("description");
        if (desc == j.end() || !desc->is_string()) {
            throw DataError("line " + std::to_string(line_no) + ": missing field description");
        }
        rec.description = desc->get<std::string>();
        out.push_back(std::move(rec));
    }
    std::unordered_map<std::string, int> seen;
    for (const auto& rec : out) {
        if (++seen[rec.item_id] > 1) {
            throw DataError("duplicate item_id: " + rec.item_id);
        }
    }
    return out;
}

void save_items(const std::string& path, std::span<const ItemRecord> items) {
    auto out = open_output(path);
    for (const auto& rec : items) {
        json j{{"item_id", rec.item_id}, {"title", rec.title}, {"description", rec.description}};
        out << j.dump() << '\n';
    }
}

std::vector<UserHistory> build_histories(std::span<const Interaction> interactions,
                                         int max_history) {
    if (max_history < 2) throw UsageError("max_history must be >= 2");

    std::vector<std::string> user_order;
    std::unordered_map<std::string, std::vector<std::size_t>> by_user;
    for (std::size_t i = 0; i < interactions.size(); ++i) {
        auto& slot = by_user[interactions[i].user_id];
        if (slot.empty()) user_order.push_back(interactions[i].user_id);
        slot.push_back(i);
    }

    std::vector<UserHistory> out;
    out.reserve(user_order.size());
    for (const auto& user : user_order) {
        auto idx = by_user[user];
        std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
            return interactions[a].ts < interactions[b].ts;
        });
        std::size_t keep = std::min<std::size_t>(idx.size(), static_cast<std::size_t>(max_history));
        std::size_t start = idx.size() - keep;
        UserHistory h;
        h.user_id = user;
        h.items.reserve(keep);
        h.reviews.reserve(keep);
        for (std::size_t k = start; k < idx.size(); ++k) {
            h.items.push_back(interactions[idx[k]].item_id);
            h.reviews.push_back(interactions[idx[k]].review);
        }
        out.push_back(std::move(h));
    }
    return out;
}

Split split_leave_one_out(std::span<const UserHistory> histories) {
    Split split;
    for (const auto& h : histories) {
        if (h.items.size() < 3) {
            ++split.skipped_users;
            continue;
        }
        UserHistory train;
        train.user_id = h.user_id;
        train.items.assign(h.items.begin(), h.items.end() - 1);
        train.reviews.assign(h.reviews.begin(), h.reviews.end() - 1);
        EvalPair pair;
        pair.user_id = h.user_id;
        pair.prompt_items = train.items;
        pair.label_item = h.items.back();
        pair.label_review = h.reviews.back();
        split.train_histories.push_back(std::move(train));
        split.eval_pairs.push_back(std::move(pair));
    }
    return split;
}

namespace {

const char* kAdjectives[] = {
    "amber",  "brisk",  "cobalt", "dusty",  "ember",   "frosty", "gilded", "hollow",
    "ivory",  "jade",   "keen",   "lunar",  "mossy",   "noble",  "onyx",   "pale",
    "quiet",  "rustic", "silver", "tidal",  "umber",   "vivid",  "woven",  "zesty",
};

const char* kNouns[] = {
    "anchor", "beacon", "candle", "drum",   "easel",  "falcon", "garnet", "harbor",
    "inkwell", "jigsaw", "kettle", "lantern", "marble", "needle", "orchid", "prism",
    "quill",  "ribbon", "saddle", "trellis", "urn",    "violin", "walnut", "zephyr",
};

const char* kVerbs[] = {
    "brightens", "carries", "folds", "guards", "holds",  "lifts",
    "mirrors",   "opens",   "rests", "sharpens", "turns", "warms",
};

}  // namespace

SynthData generate_synthetic(const SynthConfig& config) {
    if (config.n_items < 2) throw UsageError("n_items must be >= 2");
    if (config.n_users < 1) throw UsageError("n_users must be >= 1");
    if (config.chain_noise < 0.0 || config.chain_noise > 1.0) {
        throw UsageError("chain_noise must be in [0, 1]");
    }
    if (config.min_len < 1 || config.max_len < config.min_len) {
        throw UsageError("invalid synthetic length range");
    }

    SynthData data;
    std::mt19937_64 rng(splitmix64(config.seed));

    constexpr int n_adj = static_cast<int>(std::size(kAdjectives));
    constexpr int n_noun = static_cast<int>(std::size(kNouns));
    constexpr int n_verb = static_cast<int>(std::size(kVerbs));

    data.items.reserve(config.n_items);
    for (int i = 0; i < config.n_items; ++i) {
        ItemRecord rec;
        rec.item_id = synth_item_id(i);
        std::string adj = kAdjectives[rng() % n_adj];
        std::string noun = kNouns[rng() % n_noun];
        rec.title = adj + " " + noun;
        std::ostringstream desc;
        desc << "the " << adj << " " << noun << " " << kVerbs[rng() % n_verb] << " the "
             << kNouns[rng() % n_noun] << " and " << kVerbs[rng() % n_verb] << " the "
             << kAdjectives[rng() % n_adj] << " " << kNouns[rng() % n_noun];
        rec.description = desc.str();
        data.items.push_back(std::move(rec));
    }

    // Successor map is a random permutation: long-run item frequencies stay
    // near uniform, which keeps the popularity baseline flat on planted data.
    data.successor.resize(config.n_items);
    for (int i = 0; i < config.n_items; ++i) data.successor[i] = i;
    std::shuffle(data.successor.begin(), data.successor.end(), rng);

    std::uniform_int_distribution<int> len_dist(config.min_len, config.max_len);
    std::uniform_int_distribution<int> item_dist(0, config.n_items - 1);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    for (int u = 0; u < config.n_users; ++u) {
        int len = len_dist(rng);
        int cur = item_dist(rng);
        std::int64_t base_ts = 1000000 + static_cast<std::int64_t>(u) * 100000;
        for (int t = 0; t < len; ++t) {
            Interaction it;
            it.user_id = synth_user_id(u);
            it.item_id = synth_item_id(cur);
            it.ts = base_ts + t;
            data.interactions.push_back(std::move(it));
            if (unit(rng) < config.chain_noise) {
                cur = item_dist(rng);
            } else {
                cur = data.successor[cur];
            }
        }
    }
    return data;
}

}  // namespace alignrec
