#include "tlalign/fact_db.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "tlalign/errors.hpp"

namespace tlalign {

using ordered_json = nlohmann::ordered_json;

const PredicateDecl* Schema::find(const std::string& name) const {
  for (const auto& p : predicates)
    if (p.name == name) return &p;
  return nullptr;
}

const PredicateDecl& Schema::require(const std::string& name) const {
  if (const PredicateDecl* p = find(name)) return *p;
  fail(ErrorCode::UnknownPredicate, "unknown predicate '" + name + "'");
}

void Schema::validate() const {
  std::set<std::string> seen;
  for (const auto& p : predicates) {
    if (!seen.insert(p.name).second)
      fail(ErrorCode::MalformedInput, "duplicate predicate '" + p.name + "'");
    if (p.arity < 1)
      fail(ErrorCode::MalformedInput,
           "predicate '" + p.name + "' must have arity >= 1");
  }
}

namespace {

int time_key(const Fact& f) { return f.time.value_or(-1); }

void sort_unique(std::vector<std::string>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

FactDatabase::FactDatabase(Schema schema, int num_clips,
                           std::vector<std::string> entities,
                           std::vector<std::string> values,
                           std::vector<Fact> facts)
    : schema_(std::move(schema)),
      num_clips_(num_clips),
      entities_(std::move(entities)),
      values_(std::move(values)),
      facts_(std::move(facts)) {
  schema_.validate();
  if (num_clips_ < 1) fail(ErrorCode::InvalidConfig, "num_clips must be >= 1");
  sort_unique(entities_);
  sort_unique(values_);

  std::sort(facts_.begin(), facts_.end(), [](const Fact& a, const Fact& b) {
    int ta = time_key(a), tb = time_key(b);
    return std::tie(a.predicate, ta, a.args) < std::tie(b.predicate, tb, b.args);
  });

  std::set<std::string> entity_set(entities_.begin(), entities_.end());
  std::set<std::string> value_set(values_.begin(), values_.end());
  for (std::size_t i = 0; i < facts_.size(); ++i) {
    Fact& f = facts_[i];
    f.id = static_cast<int>(i);
    const PredicateDecl& decl = schema_.require(f.predicate);
    if (static_cast<int>(f.args.size()) != decl.arity)
      fail(ErrorCode::ArityMismatch,
           "fact for '" + f.predicate + "' has wrong arity");
    if ((decl.kind == PredKind::Evolving) != f.time.has_value())
      fail(ErrorCode::MalformedInput,
           "time step presence does not match predicate kind for '" +
               f.predicate + "'");
    if (f.time && (*f.time < 1 || *f.time > num_clips_))
      fail(ErrorCode::TimeOutOfRange,
           "fact time " + std::to_string(*f.time) + " outside 1.." +
               std::to_string(num_clips_));
    if (!(f.prob >= 0.0 && f.prob <= 1.0))
      fail(ErrorCode::ProbOutOfRange, "fact probability outside [0,1]");
    for (const std::string& a : f.args)
      if (!entity_set.count(a) && !value_set.count(a))
        fail(ErrorCode::MalformedInput,
             "constant '" + a + "' is neither an entity nor a value");
    if (i > 0) {
      const Fact& prev = facts_[i - 1];
      if (prev.predicate == f.predicate && time_key(prev) == time_key(f) &&
          prev.args == f.args)
        fail(ErrorCode::DuplicateKey,
             "duplicate fact for '" + f.predicate + "'");
    }
    probs_.push_back(f.prob);
    by_pred_time_[{f.predicate, time_key(f)}].push_back(f.id);
  }
}

FactDatabase FactDatabase::with_prob(int fact_id, double prob) const {
  FactDatabase copy = *this;
  if (fact_id < 0 || fact_id >= static_cast<int>(copy.facts_.size()))
    fail(ErrorCode::MissingProbability, "fact id out of range");
  if (!(prob >= 0.0 && prob <= 1.0))
    fail(ErrorCode::ProbOutOfRange, "probability outside [0,1]");
  copy.facts_[static_cast<std::size_t>(fact_id)].prob = prob;
  copy.probs_[static_cast<std::size_t>(fact_id)] = prob;
  return copy;
}

std::optional<std::pair<int, double>> FactDatabase::lookup(const Atom& atom,
                                                           int t) const {
  const PredicateDecl& decl = schema_.require(atom.predicate);
  if (t < 1 || t > num_clips_)
    fail(ErrorCode::TimeOutOfRange,
         "clip index " + std::to_string(t) + " outside 1.." +
             std::to_string(num_clips_));
  if (static_cast<int>(atom.args.size()) != decl.arity)
    fail(ErrorCode::ArityMismatch,
         "atom for '" + atom.predicate + "' has wrong arity");
  std::vector<std::string> args;
  args.reserve(atom.args.size());
  for (const Term& term : atom.args) {
    if (term.kind != TermKind::Constant)
      fail(ErrorCode::MalformedInput, "lookup requires a ground atom");
    args.push_back(term.symbol);
  }
  int key_time = decl.kind == PredKind::Static ? -1 : t;
  auto it = by_pred_time_.find({atom.predicate, key_time});
  if (it == by_pred_time_.end()) return std::nullopt;
  for (int id : it->second) {
    const Fact& f = facts_[static_cast<std::size_t>(id)];
    if (f.args == args) return std::make_pair(id, f.prob);
  }
  return std::nullopt;
}

std::vector<int> FactDatabase::match(
    const std::string& predicate,
    std::span<const std::optional<std::string>> pattern, int t) const {
  const PredicateDecl& decl = schema_.require(predicate);
  if (t < 1 || t > num_clips_)
    fail(ErrorCode::TimeOutOfRange, "clip index outside range");
  if (static_cast<int>(pattern.size()) != decl.arity)
    fail(ErrorCode::ArityMismatch, "pattern arity mismatch");
  int key_time = decl.kind == PredKind::Static ? -1 : t;
  auto it = by_pred_time_.find({predicate, key_time});
  std::vector<int> out;
  if (it == by_pred_time_.end()) return out;
  for (int id : it->second) {
    const Fact& f = facts_[static_cast<std::size_t>(id)];
    bool ok = true;
    for (std::size_t i = 0; i < pattern.size(); ++i)
      if (pattern[i] && *pattern[i] != f.args[i]) ok = false;
    if (ok) out.push_back(id);
  }
  return out;
}

bool FactDatabase::deterministic() const {
  return std::all_of(probs_.begin(), probs_.end(),
                     [](double p) { return p == 0.0 || p == 1.0; });
}

FactDatabase from_clip_scores(const Schema& schema,
                              std::vector<std::string> entities, int num_clips,
                              const std::map<ScoreKey, double>& scores) {
  std::set<std::string> entity_set(entities.begin(), entities.end());
  std::vector<std::string> values;
  std::vector<Fact> facts;
  facts.reserve(scores.size());
  for (const auto& [key, prob] : scores) {
    if (!(prob >= 0.0 && prob <= 1.0))
      fail(ErrorCode::ProbOutOfRange,
           "score for '" + key.predicate + "' outside [0,1]");
    Fact f;
    f.predicate = key.predicate;
    f.time = key.time;
    f.args = key.args;
    f.prob = prob;
    for (const std::string& a : f.args)
      if (!entity_set.count(a)) values.push_back(a);
    facts.push_back(std::move(f));
  }
  // std::map keys are unique, so duplicates can only arise from callers
  // assembling facts directly; the constructor re-checks either way.
  return FactDatabase(schema, num_clips, std::move(entities), std::move(values),
                      std::move(facts));
}

std::vector<Grounding> groundings(const FactDatabase& db,
                                  const Specification& spec, std::size_t cap) {
  const std::vector<std::string>& entities = db.entities();
  std::size_t nvars = spec.quantified_vars.size();
  if (nvars == 0) return {Grounding{}};

  std::size_t total = 1;
  for (std::size_t i = 0; i < nvars; ++i) {
    total *= entities.size();
    if (total > cap)
      fail(ErrorCode::GroundingExplosion,
           "grounding count exceeds cap of " + std::to_string(cap));
  }
  std::vector<Grounding> out;
  out.reserve(total);
  Grounding current(nvars);
  // odometer with the first variable most significant
  std::vector<std::size_t> idx(nvars, 0);
  if (entities.empty()) return out;
  for (;;) {
    for (std::size_t i = 0; i < nvars; ++i) current[i] = entities[idx[i]];
    out.push_back(current);
    std::size_t pos = nvars;
    while (pos > 0) {
      --pos;
      if (++idx[pos] < entities.size()) break;
      idx[pos] = 0;
      if (pos == 0) return out;
    }
  }
}

std::string to_json(const FactDatabase& db) {
  ordered_json j;
  j["num_clips"] = db.num_clips();
  j["entities"] = db.entities();
  j["values"] = db.values();
  ordered_json schema = ordered_json::array();
  for (const auto& p : db.schema().predicates) {
    ordered_json pj;
    pj["name"] = p.name;
    pj["arity"] = p.arity;
    pj["kind"] = p.kind == PredKind::Static ? "static" : "evolving";
    schema.push_back(std::move(pj));
  }
  j["schema"] = std::move(schema);
  ordered_json facts = ordered_json::array();
  for (const Fact& f : db.facts()) {
    ordered_json fj;
    fj["prob"] = f.prob;
    fj["pred"] = f.predicate;
    if (f.time)
      fj["time"] = *f.time;
    else
      fj["time"] = nullptr;
    fj["args"] = f.args;
    facts.push_back(std::move(fj));
  }
  j["facts"] = std::move(facts);
  return j.dump();
}

FactDatabase db_from_json(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const std::exception& e) {
    fail(ErrorCode::MalformedInput, std::string("bad database JSON: ") + e.what());
  }
  try {
    Schema schema;
    for (const auto& pj : j.at("schema")) {
      PredicateDecl decl;
      decl.name = pj.at("name").get<std::string>();
      decl.arity = pj.at("arity").get<int>();
      std::string kind = pj.at("kind").get<std::string>();
      if (kind != "static" && kind != "evolving")
        fail(ErrorCode::MalformedInput, "predicate kind must be static|evolving");
      decl.kind = kind == "static" ? PredKind::Static : PredKind::Evolving;
      schema.predicates.push_back(std::move(decl));
    }
    std::vector<Fact> facts;
    for (const auto& fj : j.at("facts")) {
      Fact f;
      f.prob = fj.at("prob").get<double>();
      f.predicate = fj.at("pred").get<std::string>();
      if (!fj.at("time").is_null()) f.time = fj.at("time").get<int>();
      f.args = fj.at("args").get<std::vector<std::string>>();
      facts.push_back(std::move(f));
    }
    return FactDatabase(std::move(schema), j.at("num_clips").get<int>(),
                        j.at("entities").get<std::vector<std::string>>(),
                        j.at("values").get<std::vector<std::string>>(),
                        std::move(facts));
  } catch (const ordered_json::exception& e) {
    fail(ErrorCode::MalformedInput,
         std::string("bad database JSON: ") + e.what());
  }
}

FactDatabase load_db(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::IoError, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return db_from_json(buf.str());
}

void save_db(const FactDatabase& db, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::IoError, "cannot write '" + path + "'");
  out << to_json(db);
}

}  // namespace tlalign
