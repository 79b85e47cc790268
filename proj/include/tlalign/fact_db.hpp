#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "tlalign/ast.hpp"

namespace tlalign {

enum class PredKind { Static, Evolving };

struct PredicateDecl {
  std::string name;
  int arity = 1;  // non-time arguments
  PredKind kind = PredKind::Evolving;

  bool operator==(const PredicateDecl&) const = default;
};

struct Schema {
  std::vector<PredicateDecl> predicates;

  const PredicateDecl* find(const std::string& name) const;
  const PredicateDecl& require(const std::string& name) const;
  void validate() const;

  bool operator==(const Schema&) const = default;
};

/// One probabilistic relational tuple. Static facts carry no time step and
/// hold at every clip; evolving facts hold at exactly one clip.
struct Fact {
  int id = 0;
  std::string predicate;
  std::optional<int> time;  // clip index in 1..m, absent for static facts
  std::vector<std::string> args;
  double prob = 0.0;
};

/// A mapping from quantified variables to entities, parallel to
/// Specification::quantified_vars.
using Grounding = std::vector<std::string>;

/// Immutable time-indexed probabilistic database. Fact ids are dense
/// 0..n-1, assigned in lexicographic (predicate, time, args) order with
/// static facts ordered before evolving ones of the same predicate.
class FactDatabase {
 public:
  FactDatabase() = default;
  FactDatabase(Schema schema, int num_clips, std::vector<std::string> entities,
               std::vector<std::string> values, std::vector<Fact> facts);

  const Schema& schema() const { return schema_; }
  int num_clips() const { return num_clips_; }
  const std::vector<std::string>& entities() const { return entities_; }
  const std::vector<std::string>& values() const { return values_; }
  const std::vector<Fact>& facts() const { return facts_; }
  const Fact& fact(int id) const { return facts_[static_cast<std::size_t>(id)]; }

  /// Probabilities indexed by fact id.
  std::span<const double> probs() const { return probs_; }

  /// Copy of this database with the probability of one fact replaced.
  FactDatabase with_prob(int fact_id, double prob) const;

  /// Exact-match lookup of a ground atom at clip t. Static facts match any
  /// t. Absence means probability zero under the closed-world assumption.
  std::optional<std::pair<int, double>> lookup(const Atom& atom, int t) const;

  /// Fact ids matching a predicate at clip t where each argument is either a
  /// required constant or unconstrained (wildcard). Deterministic id order.
  std::vector<int> match(const std::string& predicate,
                         std::span<const std::optional<std::string>> pattern,
                         int t) const;

  bool deterministic() const;  // every probability is exactly 0 or 1

 private:
  Schema schema_;
  int num_clips_ = 1;
  std::vector<std::string> entities_;
  std::vector<std::string> values_;
  std::vector<Fact> facts_;
  std::vector<double> probs_;
  // (predicate, time or -1 for static) -> fact ids in id order
  std::map<std::pair<std::string, int>, std::vector<int>> by_pred_time_;
};

struct ScoreKey {
  std::string predicate;
  std::optional<int> time;
  std::vector<std::string> args;

  bool operator<(const ScoreKey& o) const {
    return std::tie(predicate, time, args) < std::tie(o.predicate, o.time, o.args);
  }
  bool operator==(const ScoreKey&) const = default;
};

/// Builds a database from per-clip classification scores. Id assignment is
/// deterministic: facts are sorted by (predicate, time, args). Constants in
/// args that are not entities are registered as value constants.
FactDatabase from_clip_scores(const Schema& schema,
                              std::vector<std::string> entities, int num_clips,
                              const std::map<ScoreKey, double>& scores);

/// All |entities|^|vars| variable groundings in lexicographic order (first
/// variable most significant, entities sorted). Throws GroundingExplosion
/// above the cap.
std::vector<Grounding> groundings(const FactDatabase& db,
                                  const Specification& spec,
                                  std::size_t cap = 10000);

std::string to_json(const FactDatabase& db);
FactDatabase db_from_json(const std::string& text);
FactDatabase load_db(const std::string& path);
void save_db(const FactDatabase& db, const std::string& path);

}  // namespace tlalign
