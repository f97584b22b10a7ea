#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "alignrec/common.hpp"
#include "alignrec/embeddings.hpp"

namespace alignrec {

enum class DistanceKind { squared_euclidean, cosine };
enum class ResidualMode { plain, absolute };
enum class AssignmentMode { behavior_only, joint };

const char* to_string(DistanceKind d);
const char* to_string(ResidualMode m);
DistanceKind distance_from_string(std::string_view s);
ResidualMode residual_mode_from_string(std::string_view s);
AssignmentMode assignment_mode_from_string(std::string_view s);

struct CodeBookConfig {
    int levels = 4;
    int codes = 256;
    int dim = 0;
    DistanceKind distance = DistanceKind::squared_euclidean;
    ResidualMode residual_mode = ResidualMode::plain;
    double llm_loss_weight = 1.0;
    AssignmentMode assignment = AssignmentMode::behavior_only;
    int max_iters = 25;
    std::uint64_t seed = 0;
};

struct SemanticId {
    std::vector<int> codes;

    bool operator==(const SemanticId& other) const { return codes == other.codes; }
    bool operator<(const SemanticId& other) const { return codes < other.codes; }
    std::string to_string() const;
};

// Loss totals recorded once per alternating-minimization iteration.
struct LevelTrace {
    std::vector<double> behavior_loss;  // sum_i Dist(E_i, B_assigned)
    std::vector<double> llm_loss;       // sum_i Dist(B_assigned, E_llm_i)
    std::vector<double> total_loss;     // behavior + weight * llm
};

struct TrainReport {
    std::vector<LevelTrace> levels;
    std::vector<double> mean_quantization_error;  // per level, final assignment
    double collision_rate = 0.0;
    int iterations_run = 0;
};

class CodeBook {
public:
    CodeBook() = default;
    CodeBook(CodeBookConfig config, std::vector<std::vector<Vec>> levels);

    const CodeBookConfig& config() const { return config_; }
    int levels() const { return config_.levels; }
    int codes_per_level() const { return config_.codes; }
    int dim() const { return config_.dim; }
    const Vec& code(int level, int index) const { return levels_[level][index]; }
    const std::vector<Vec>& level(int n) const { return levels_[n]; }

private:
    CodeBookConfig config_;
    std::vector<std::vector<Vec>> levels_;  // [N][C] vectors of length D
};

// k-means++ seeding followed by convergence-capped Lloyd iterations under
// squared Euclidean distance. If fewer than C distinct points exist, surplus
// codes duplicate the mean residual plus seeded jitter of magnitude 1e-6.
std::vector<Vec> init_level(std::span<const Vec> residuals, int C, std::uint64_t seed);

// Index of the nearest code; ties broken by lowest index.
int assign(const Vec& residual, std::span<const Vec> codes, DistanceKind distance);

struct TrainOutput {
    CodeBook codebook;
    TrainReport report;
    // Final training-time assignment per item. With behavior_only assignment
    // this equals tokenize_item on the item's behavior vector; with joint
    // assignment the training ids additionally see the semantic embedding,
    // which cold-start tokenization does not have.
    std::map<std::string, SemanticId> ids;
};

TrainOutput train_codebooks(const EmbeddingTable& behavior, const EmbeddingTable& semantic,
                            const CodeBookConfig& config);

struct Tokenized {
    SemanticId id;
    Vec final_residual;
};

// Greedy cascade: assign at level 0, take the residual, assign at level 1, ...
// Pure function of (vector, codebook).
Tokenized tokenize_item(const Vec& behavior_vector, const CodeBook& codebook);

struct CollisionGroup {
    SemanticId id;
    std::vector<std::string> items;  // sorted by item_id
};

struct CollisionReport {
    double rate = 0.0;  // items sharing their full code sequence / total items
    std::vector<CollisionGroup> groups;
};

CollisionReport collision_report(const std::map<std::string, SemanticId>& ids);

// codebook file: header "levels=<N> codes=<C> dim=<D> distance=<...> residual=<...>",
// then N*C lines "level<TAB>index<TAB>v1,...,vD".
void save_codebook(const std::string& path, const CodeBook& codebook);
CodeBook load_codebook(const std::string& path);
std::string codebook_checksum(const CodeBook& codebook);

// semantic-id map file: one line per item "item_id<TAB>c0,c1,...,c{N-1}".
void save_semantic_ids(const std::string& path, const std::map<std::string, SemanticId>& ids);
std::map<std::string, SemanticId> load_semantic_ids(const std::string& path);

}  // namespace alignrec
