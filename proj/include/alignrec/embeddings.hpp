#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "alignrec/catalog.hpp"
#include "alignrec/common.hpp"

namespace alignrec {

enum class EmbeddingKind { behavior, semantic };

const char* to_string(EmbeddingKind kind);
EmbeddingKind embedding_kind_from_string(std::string_view s);

// Dense per-item vectors. Lookup of a missing item throws; there is no silent
// zero-vector fallback. Ordered storage keeps serialization deterministic.
class EmbeddingTable {
public:
    EmbeddingTable() = default;
    EmbeddingTable(int dim, EmbeddingKind kind) : dim_(dim), kind_(kind) {}

    int dim() const { return dim_; }
    EmbeddingKind kind() const { return kind_; }
    std::size_t size() const { return vectors_.size(); }
    bool contains(const std::string& item_id) const { return vectors_.count(item_id) > 0; }

    void insert(const std::string& item_id, Vec v);
    const Vec& at(const std::string& item_id) const;

    const std::map<std::string, Vec>& vectors() const { return vectors_; }

    // Sorted item ids (map order).
    std::vector<std::string> item_ids() const;

private:
    int dim_ = 0;
    EmbeddingKind kind_ = EmbeddingKind::behavior;
    std::map<std::string, Vec> vectors_;
};

struct SkipGramConfig {
    int dim = 32;
    int window = 2;
    int epochs = 5;
    double learning_rate = 0.025;
    int negatives_per_pair = 5;
    std::uint64_t seed = 0;
};

// Skip-gram with negative sampling over item co-occurrence windows inside user
// histories. Single-threaded and deterministic for a fixed seed.
EmbeddingTable train_behavior_embeddings(std::span<const UserHistory> histories,
                                         const SkipGramConfig& config);

// Feature-hashed bag of words over title + description, averaged and
// L2-normalized. Sign-hash decides +-1 per token to reduce collision bias.
Vec text_embedding(const ItemRecord& item, int dim, std::uint64_t seed);

EmbeddingTable build_semantic_table(std::span<const ItemRecord> items, int dim,
                                    std::uint64_t seed);

// Seeded random linear map with N(0, 1/target_dim) entries. Same seed and
// shape give the same map.
class Projector {
public:
    Projector(int input_dim, int target_dim, std::uint64_t seed);

    int input_dim() const { return input_dim_; }
    int target_dim() const { return target_dim_; }

    Vec apply(const Vec& v) const;

private:
    int input_dim_ = 0;
    int target_dim_ = 0;
    std::vector<double> weights_;  // [input_dim][target_dim]
};

// Projects every vector in the table; semantic tables are re-normalized to
// unit length afterwards to keep the table invariant.
EmbeddingTable project_table(const EmbeddingTable& table, int target_dim, std::uint64_t seed);

// File format: header "dim=<D> kind=<behavior|semantic>", then one line per
// item: item_id<TAB>v1,v2,...,vD.
void save_embeddings(const std::string& path, const EmbeddingTable& table);
EmbeddingTable load_embeddings(const std::string& path);

}  // namespace alignrec
