#include "alignrec/embeddings.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <unordered_map>

namespace alignrec {

const char* to_string(EmbeddingKind kind) {
    return kind == EmbeddingKind::behavior ? "behavior" : "semantic";
}

EmbeddingKind embedding_kind_from_string(std::string_view s) {
    if (s == "behavior") return EmbeddingKind::behavior;
    if (s == "semantic") return EmbeddingKind::semantic;
    throw DataError("unknown embedding kind: '" + std::string(s) + "'");
}

void EmbeddingTable::insert(const std::string& item_id, Vec v) {
    if (static_cast<int>(v.size()) != dim_) {
        throw DataError("embedding dim mismatch for item " + item_id);
    }
    for (double x : v) {
        if (!std::isfinite(x)) throw NumericError("non-finite embedding for item " + item_id);
    }
    vectors_[item_id] = std::move(v);
}

const Vec& EmbeddingTable::at(const std::string& item_id) const {
    auto it = vectors_.find(item_id);
    if (it == vectors_.end()) throw DataError("unknown item in embedding table: " + item_id);
    return it->second;
}

std::vector<std::string> EmbeddingTable::item_ids() const {
    std::vector<std::string> out;
    out.reserve(vectors_.size());
    for (const auto& [id, _] : vectors_) out.push_back(id);
    return out;
}

namespace {

inline double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

}  // namespace

EmbeddingTable train_behavior_embeddings(std::span<const UserHistory> histories,
                                         const SkipGramConfig& config) {
    if (config.dim < 2) throw UsageError("embedding dim must be >= 2");
    if (config.window < 1) throw UsageError("window must be >= 1");

    // Stable item indexing: sorted ids.
    std::vector<std::string> items;
    for (const auto& h : histories) {
        for (const auto& it : h.items) items.push_back(it);
    }
    std::sort(items.begin(), items.end());
    items.erase(std::unique(items.begin(), items.end()), items.end());
    if (items.empty()) throw DataError("empty corpus: no items in histories");

    bool has_pair = false;
    for (const auto& h : histories) {
        if (h.items.size() >= 2) {
            has_pair = true;
            break;
        }
    }
    if (!has_pair) throw DataError("empty corpus: no history with >= 2 items");

    std::unordered_map<std::string, int> index;
    index.reserve(items.size());
    for (std::size_t i = 0; i < items.size(); ++i) index[items[i]] = static_cast<int>(i);

    const int n = static_cast<int>(items.size());
    const int d = config.dim;

    // word2vec-style init: input vectors uniform in [-0.5/d, 0.5/d), output zeros.
    std::mt19937_64 rng(splitmix64(config.seed));
    std::uniform_real_distribution<double> init(-0.5 / d, 0.5 / d);
    std::vector<double> in_vecs(static_cast<std::size_t>(n) * d);
    std::vector<double> out_vecs(static_cast<std::size_t>(n) * d, 0.0);
    for (auto& x : in_vecs) x = init(rng);

    std::uniform_int_distribution<int> neg_dist(0, n - 1);
    const double lr = config.learning_rate;
    std::vector<double> grad_in(d);

    for (int epoch = 0; epoch < config.epochs; ++epoch) {
        for (const auto& h : histories) {
            const int len = static_cast<int>(h.items.size());
            for (int center = 0; center < len; ++center) {
                const int ci = index[h.items[center]];
                double* vc = &in_vecs[static_cast<std::size_t>(ci) * d];
                const int lo = std::max(0, center - config.window);
                const int hi = std::min(len - 1, center + config.window);
                for (int ctx = lo; ctx <= hi; ++ctx) {
                    if (ctx == center) continue;
                    std::fill(grad_in.begin(), grad_in.end(), 0.0);
                    // Positive target plus sampled negatives; label 1 then 0s.
                    for (int k = 0; k <= config.negatives_per_pair; ++k) {
                        int target;
                        double label;
                        if (k == 0) {
                            target = index[h.items[ctx]];
                            label = 1.0;
                        } else {
                            target = neg_dist(rng);
                            if (target == ci) continue;
                            label = 0.0;
                        }
                        double* vo = &out_vecs[static_cast<std::size_t>(target) * d];
                        double dot = 0.0;
                        for (int j = 0; j < d; ++j) dot += vc[j] * vo[j];
                        const double g = (label - sigmoid(dot)) * lr;
                        for (int j = 0; j < d; ++j) {
                            grad_in[j] += g * vo[j];
                            vo[j] += g * vc[j];
                        }
                    }
                    for (int j = 0; j < d; ++j) vc[j] += grad_in[j];
                }
            }
        }
    }

    EmbeddingTable table(d, EmbeddingKind::behavior);
    for (int i = 0; i < n; ++i) {
        Vec v(in_vecs.begin() + static_cast<std::size_t>(i) * d,
              in_vecs.begin() + static_cast<std::size_t>(i + 1) * d);
        table.insert(items[i], std::move(v));
    }
    return table;
}

Vec text_embedding(const ItemRecord& item, int dim, std::uint64_t seed) {
    if (dim < 1) throw UsageError("text embedding dim must be >= 1");
    auto tokens = tokenize_text(item.title + " " + item.description);
    if (tokens.empty()) throw DataError("item has no text tokens: " + item.item_id);

    Vec v(dim, 0.0);
    for (const auto& tok : tokens) {
        const std::uint64_t h = hash_string(tok, seed);
        const std::uint64_t s = hash_string(tok, splitmix64(seed + 1));
        const int bucket = static_cast<int>(h % static_cast<std::uint64_t>(dim));
        const double sign = (s & 1) ? 1.0 : -1.0;
        v[bucket] += sign;
    }
    for (auto& x : v) x /= static_cast<double>(tokens.size());

    double norm = 0.0;
    for (double x : v) norm += x * x;
    norm = std::sqrt(norm);
    if (norm == 0.0) {
        // All tokens cancelled; fall back to a deterministic unit vector so the
        // table invariant (unit norm, no NaN) holds.
        v[static_cast<int>(hash_string(item.item_id, seed) % static_cast<std::uint64_t>(dim))] = 1.0;
        return v;
    }
    for (auto& x : v) x /= norm;
    return v;
}

EmbeddingTable build_semantic_table(std::span<const ItemRecord> items, int dim,
                                    std::uint64_t seed) {
    EmbeddingTable table(dim, EmbeddingKind::semantic);
    for (const auto& item : items) {
        table.insert(item.item_id, text_embedding(item, dim, seed));
    }
    return table;
}

Projector::Projector(int input_dim, int target_dim, std::uint64_t seed)
    : input_dim_(input_dim), target_dim_(target_dim) {
    if (target_dim < 1) throw UsageError("projection target_dim must be >= 1");
    if (input_dim < target_dim) {
        throw UsageError("projection requires input_dim >= target_dim");
    }
    std::mt19937_64 rng(splitmix64(seed ^ 0x70726f6aULL));
    std::normal_distribution<double> gauss(0.0, 1.0);
    const double scale = 1.0 / std::sqrt(static_cast<double>(target_dim));
    weights_.resize(static_cast<std::size_t>(input_dim) * target_dim);
    for (auto& w : weights_) w = gauss(rng) * scale;
}

Vec Projector::apply(const Vec& v) const {
    if (static_cast<int>(v.size()) != input_dim_) {
        throw DataError("projection input dim mismatch: got " + std::to_string(v.size()) +
                        ", map expects " + std::to_string(input_dim_));
    }
    Vec out(target_dim_, 0.0);
    for (int i = 0; i < input_dim_; ++i) {
        const double x = v[i];
        const double* row = &weights_[static_cast<std::size_t>(i) * target_dim_];
        for (int j = 0; j < target_dim_; ++j) out[j] += x * row[j];
    }
    return out;
}

EmbeddingTable project_table(const EmbeddingTable& table, int target_dim, std::uint64_t seed) {
    Projector proj(table.dim(), target_dim, seed);
    EmbeddingTable out(target_dim, table.kind());
    for (const auto& [id, v] : table.vectors()) {
        Vec p = proj.apply(v);
        if (table.kind() == EmbeddingKind::semantic) {
            double norm = 0.0;
            for (double x : p) norm += x * x;
            norm = std::sqrt(norm);
            if (norm > 0.0) {
                for (auto& x : p) x /= norm;
            }
        }
        out.insert(id, std::move(p));
    }
    return out;
}

void save_embeddings(const std::string& path, const EmbeddingTable& table) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot open file for writing: " + path);
    out << "dim=" << table.dim() << " kind=" << to_string(table.kind()) << '\n';
    for (const auto& [id, v] : table.vectors()) {
        out << id << '\t';
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i) out << ',';
            out << format_double(v[i]);
        }
        out << '\n';
    }
}

EmbeddingTable load_embeddings(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open file: " + path);
    std::string header;
    if (!std::getline(in, header)) throw DataError("empty embeddings file: " + path);

    int dim = 0;
    EmbeddingKind kind = EmbeddingKind::behavior;
    bool have_dim = false, have_kind = false;
    for (const auto& field : split_on(header, ' ')) {
        if (field.rfind("dim=", 0) == 0) {
            dim = std::stoi(field.substr(4));
            have_dim = true;
        } else if (field.rfind("kind=", 0) == 0) {
            kind = embedding_kind_from_string(field.substr(5));
            have_kind = true;
        }
    }
    if (!have_dim || !have_kind) throw DataError("malformed embeddings header: " + header);

    EmbeddingTable table(dim, kind);
    std::string line;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        auto tab = line.find('\t');
        if (tab == std::string::npos) {
            throw DataError("line " + std::to_string(line_no) + ": missing tab separator");
        }
        std::string id = line.substr(0, tab);
        Vec v;
        v.reserve(dim);
        for (const auto& s : split_on(std::string_view(line).substr(tab + 1), ',')) {
            v.push_back(parse_double(s));
        }
        table.insert(id, std::move(v));
    }
    return table;
}

}  // namespace alignrec
