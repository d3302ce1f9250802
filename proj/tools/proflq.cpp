// proflq: command-line front end. One subcommand per process; every report
// embeds the configuration and the SHA-256 of each input file, and dumps
// with sorted keys so identical inputs give identical bytes.
//
// Exit codes: 0 positive verdict, 1 negative finding, 2 usage or budget
// error, 3 internal invariant violation.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <openssl/evp.h>

#include "proflq/json_io.hpp"
#include "proflq/lq.hpp"
#include "proflq/selftest.hpp"
#include "proflq/sep.hpp"
#include "proflq/tower.hpp"
#include "proflq/verdict.hpp"

namespace {

using proflq::ExitCode;
using proflq::io::Json;
namespace io = proflq::io;

constexpr const char* kVersion = "0.1.0";

std::string sha256(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw proflq::InvariantViolation("sha256: digest failed");
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
  return os.str();
}

struct Config {
  int p = 2;
  std::size_t rank = 1;
  std::size_t k_max = 3;
  std::optional<std::size_t> depth;
  std::size_t budget_group_order = 360;
  std::size_t budget_cochain_dim = 5000;
  std::size_t budget_tuples = 4000000;
  double budget_level_bits = 1 << 16;
  std::uint64_t budget_hom_order = 4096;
  std::string format = "json";
  std::string output;
  bool timings = false;
  std::size_t jobs = 1;

  io::GroupBudget group_budget() const { return {budget_group_order}; }
  proflq::RepBudget rep_budget() const { return {budget_tuples}; }
  proflq::TowerBudget tower_budget() const { return {budget_level_bits}; }
  proflq::LqOptions lq_options() const {
    proflq::LqOptions o;
    o.cohomology.budget.max_cochain_dim = budget_cochain_dim;
    o.rep = rep_budget();
    return o;
  }
};

// Accumulates the report of a single command.
class Run {
 public:
  Run(std::string command, const Config& cfg) : command_(std::move(command)), cfg_(cfg) {}

  Json read(const std::string& role, const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw proflq::InvalidArgument("cannot read " + role + " file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    const std::string bytes = ss.str();
    inputs_[role] = sha256(bytes);
    try {
      return Json::parse(bytes);
    } catch (const Json::exception& e) {
      throw proflq::InvalidArgument(role + " file '" + path + "': " + e.what());
    }
  }

  // Options that shape the result, recorded next to it.
  void set(const std::string& key, Json value) { config_[key] = std::move(value); }

  Json result = Json::object();
  bool positive = true;
  std::string summary;

  std::string render(double seconds) const {
    Json config = config_;
    config["command"] = command_;
    Json inputs = Json::object();
    for (const auto& [k, v] : inputs_) inputs[k] = v;
    Json report{{"command", command_},
                {"config", config},
                {"config_digest", sha256(config.dump())},
                {"inputs", inputs},
                {"result", result},
                {"verdict", Json{{"positive", positive}, {"summary", summary}}},
                {"version", kVersion}};
    if (cfg_.timings) report["timings"] = Json{{"seconds", seconds}};
    if (cfg_.format == "table") return io::to_table(report);
    return report.dump(2) + "\n";
  }

 private:
  std::string command_;
  const Config& cfg_;
  Json config_ = Json::object();
  std::map<std::string, std::string> inputs_;
};

void require_prime(int p) { proflq::require(proflq::is_prime(p), "--p must be prime"); }

// ---------------------------------------------------------------------------
// module

struct ModuleArgs {
  std::string module, map;
};

ExitCode cmd_module(Run& run, const ModuleArgs& a) {
  using namespace proflq;
  const FiniteModule m = io::parse_module(run.read("module", a.module));
  const bool dd = is_isomorphism(double_dual_iso(m));
  if (!dd) throw InvariantViolation("module: the double dual map is not an isomorphism");
  run.result["module"] = io::to_json(m);
  run.result["dual"] = io::to_json(pontryagin_dual(m));
  run.result["double_dual_isomorphism"] = dd;
  if (!a.map.empty()) {
    const ModuleMap f = io::parse_map(run.read("map", a.map));
    const ModuleMap fd = dual_map(f);
    Json mj;
    mj["kernel"] = io::to_json(kernel(f).module);
    mj["image"] = io::to_json(image(f).module);
    mj["cokernel"] = io::to_json(cokernel(f).module);
    mj["injective"] = is_injective(f);
    mj["surjective"] = is_surjective(f);
    mj["dual_matrix"] = fd.matrix();
    // Duality reverses exactness: dual kernel and cokernel swap.
    const bool reversal = is_injective(fd) == is_surjective(f) && is_surjective(fd) == is_injective(f) &&
                          is_isomorphic(kernel(fd).module, cokernel(f).module) &&
                          is_isomorphic(cokernel(fd).module, kernel(f).module);
    if (!reversal) throw InvariantViolation("module: duality does not reverse exactness for the given map");
    mj["exactness_reversed"] = reversal;
    run.result["map"] = mj;
  }
  run.summary = "duality checks hold";
  return ExitCode::Positive;
}

// ---------------------------------------------------------------------------
// etale

struct EtaleArgs {
  std::string space, with, adjunction;
};

ExitCode cmd_etale(Run& run, const EtaleArgs& a, const Config& cfg) {
  using namespace proflq;
  const FiniteEtaleSpace e = io::parse_etale(run.read("space", a.space));
  run.result["space"] = io::to_json(e);
  run.result["product"] = io::to_json(product_finite(e).module);
  run.result["coproduct"] = io::to_json(coproduct_finite(e).module);
  run.result["dual"] = io::to_json(dual_etale(e));
  run.summary = "etale space computed";
  if (!a.with.empty()) {
    const FiniteEtaleSpace g = io::parse_etale(run.read("with", a.with));
    require(e.same_base(g), "etale: --with must be over the same base and ring");
    run.result["hom"] = io::to_json(hom_etale(e, g));
    run.result["tensor"] = io::to_json(tensor_etale(e, g));
    if (!a.adjunction.empty()) {
      const FiniteEtaleSpace l = io::parse_etale(run.read("adjunction", a.adjunction));
      run.set("budget_hom_order", cfg.budget_hom_order);
      const AdjunctionReport r = adjunction_check(e, g, l, cfg.budget_hom_order);
      Json pts = Json::array();
      for (const auto& p : r.points)
        pts.push_back(Json{{"point", p.point},
                           {"lhs_order", io::big(p.lhs_order)},
                           {"rhs_order", io::big(p.rhs_order)},
                           {"bijective", p.bijective},
                           {"additive", p.additive},
                           {"evaluation_ok", p.evaluation_ok}});
      run.result["adjunction"] = Json{{"points", pts},
                                      {"lhs_order", io::big(r.lhs_order)},
                                      {"rhs_order", io::big(r.rhs_order)},
                                      {"ok", r.ok()}};
      if (!r.ok()) throw InvariantViolation("etale: the tensor-hom bijection failed");
      run.summary = "tensor-hom adjunction verified";
    }
  } else {
    require(a.adjunction.empty(), "etale: --adjunction needs --with");
  }
  return ExitCode::Positive;
}

// ---------------------------------------------------------------------------
// tower

struct TowerArgs {
  std::string op, tower, module, etale, map;
};

proflq::EtaleTower truncate(const proflq::EtaleTower& e, std::size_t depth) {
  if (depth >= e.depth()) return e;
  std::vector<proflq::FiniteEtaleSpace> lv(e.levels().begin(), e.levels().begin() + static_cast<std::ptrdiff_t>(depth + 1));
  std::vector<std::vector<proflq::ModuleMap>> tr;
  for (std::size_t k = 0; k < depth; ++k) tr.push_back(e.transition(k));
  return proflq::EtaleTower(e.kind(), e.base().truncate(depth), lv, tr);
}

proflq::TowerMap truncate(const proflq::TowerMap& pi, std::size_t depth) {
  if (depth >= pi.source().depth()) return pi;
  std::vector<std::vector<std::size_t>> maps;
  for (std::size_t k = 0; k <= depth; ++k) maps.push_back(pi.images(k));
  return proflq::TowerMap(pi.source().truncate(depth), pi.target().truncate(depth), maps);
}

Json decomposition_json(const std::vector<proflq::DecompositionLevel>& v) {
  Json out = Json::array();
  for (const auto& l : v)
    out.push_back(Json{{"level", l.level},
                       {"lhs_order", io::big(l.lhs_order)},
                       {"rhs_order", io::big(l.rhs_order)},
                       {"isomorphism", l.isomorphism},
                       {"natural", l.natural}});
  return out;
}

ExitCode cmd_tower(Run& run, const TowerArgs& a, const Config& cfg) {
  using namespace proflq;
  if (cfg.depth) run.set("depth", *cfg.depth);
  run.set("op", a.op);
  run.set("budget_level_bits", cfg.budget_level_bits);
  const TowerBudget budget = cfg.tower_budget();
  const std::size_t depth = cfg.depth.value_or(SIZE_MAX);
  run.result["note"] = "truncated towers are locally finite torsion at every level; the hypothesis is not checked beyond the given depth";

  if (a.op == "freedec") {
    require(!a.map.empty() && !a.module.empty(), "tower freedec: need --map and --module");
    const TowerMap pi = truncate(io::parse_tower_map(run.read("map", a.map)), depth);
    const FiniteModule m = io::parse_module(run.read("module", a.module));
    const DecompositionReport r = decomposition_check(m, pi, budget);
    run.result.update(Json{{"module", io::to_json(m)},
                      {"depth", pi.source().depth()},
                      {"product_levels", decomposition_json(r.product_levels)},
                      {"sum_levels", decomposition_json(r.sum_levels)},
                      {"ok", r.ok()}});
    if (!r.ok()) throw InvariantViolation("tower freedec: decomposition fails at level " + std::to_string(*r.failing_level()));
    run.summary = "free decomposition holds levelwise";
    return ExitCode::Positive;
  }

  if (!a.etale.empty()) {
    require(a.module.empty() && a.tower.empty(), "tower: give either --etale or --tower with --module");
    const EtaleTower e = truncate(io::parse_etale_tower(run.read("etale", a.etale)), depth);
    run.result["kind"] = to_string(e.kind());
    run.result["depth"] = e.depth();
    if (a.op == "product") {
      require(e.kind() == TowerKind::Ind, "tower product: need an ind etale tower");
      run.result["product"] = io::to_json(product_ind(e));
      run.summary = "product of the ind tower";
    } else if (a.op == "coproduct") {
      require(e.kind() == TowerKind::Pro, "tower coproduct: need a pro etale tower");
      const ModuleTower direct = coproduct_pro_direct(e).tower;
      const bool agree = levelwise_isomorphic(direct, coproduct_pro(e));
      if (!agree) throw InvariantViolation("tower coproduct: direct sum and dual description disagree");
      run.result["coproduct"] = io::to_json(direct);
      run.result["matches_dual_description"] = agree;
      run.summary = "coproduct of the pro tower";
    } else if (a.op == "dual") {
      const EtaleTower d = dual_tower(e);
      const ModuleTower pd = e.kind() == TowerKind::Ind ? product_ind(e) : coproduct_pro_direct(e).tower;
      const bool natural = double_dual_natural(pd);
      if (!natural) throw InvariantViolation("tower dual: the double dual is not natural");
      Json levels = Json::array();
      for (const auto& l : d.levels()) levels.push_back(io::to_json(l));
      run.result["dual_kind"] = to_string(d.kind());
      run.result["dual_levels"] = levels;
      run.result["double_dual_natural"] = natural;
      run.summary = "dual tower computed";
    } else {
      throw InvalidArgument("tower: unknown operation '" + a.op + "'");
    }
    return ExitCode::Positive;
  }

  require(!a.tower.empty() && !a.module.empty(), "tower: need --tower and --module, or --etale");
  const SpaceTower t = io::parse_space_tower(run.read("tower", a.tower));
  const SpaceTower tt = depth < t.depth() ? t.truncate(depth) : t;
  const FiniteModule m = io::parse_module(run.read("module", a.module));
  run.result["module"] = io::to_json(m);
  run.result["depth"] = tt.depth();
  if (a.op == "product") {
    run.result["product"] = io::to_json(free_product(m, tt, budget));
    run.summary = "free product tower";
  } else if (a.op == "coproduct") {
    run.result["coproduct"] = io::to_json(free_sum(m, tt, budget));
    run.summary = "free sum tower";
  } else if (a.op == "dual") {
    const ModuleTower sum = free_sum(m, tt, budget);
    const ModuleTower dual_of_product = dual_tower(free_product(pontryagin_dual(m), tt, budget));
    const bool iso = levelwise_isomorphic(dual_of_product, sum);
    const bool natural = double_dual_natural(sum);
    if (!iso || !natural) throw InvariantViolation("tower dual: dual of the free product is not the free sum");
    run.result["dual_of_free_product"] = io::to_json(dual_of_product);
    run.result["matches_free_sum"] = iso;
    run.result["double_dual_natural"] = natural;
    run.summary = "dual of the free product is the free sum";
  } else {
    throw InvalidArgument("tower: unknown operation '" + a.op + "'");
  }
  return ExitCode::Positive;
}

// ---------------------------------------------------------------------------
// group inputs

struct GroupArgs {
  std::string group, tower;
};

struct GroupInput {
  std::optional<proflq::FiniteGroup> group;
  std::optional<proflq::GroupTower> tower;
};

GroupInput read_groups(Run& run, const GroupArgs& a, const Config& cfg) {
  proflq::require(a.group.empty() != a.tower.empty(), "need exactly one of --group and --tower");
  GroupInput in;
  if (!a.group.empty()) {
    in.group = io::parse_group(run.read("group", a.group), cfg.group_budget());
  } else {
    in.tower = io::parse_group_tower(run.read("tower", a.tower), cfg.group_budget());
    if (cfg.depth) {
      run.set("depth", *cfg.depth);
      in.tower = io::truncate(*in.tower, *cfg.depth);
    }
  }
  return in;
}

// ---------------------------------------------------------------------------
// cohomology

struct CohomologyArgs {
  GroupArgs groups;
  std::string coefficients = "trivial";
  std::string subgroup;
  std::string method = "resolution";
};

ExitCode cmd_cohomology(Run& run, const CohomologyArgs& a, const Config& cfg) {
  using namespace proflq;
  require_prime(cfg.p);
  run.set("p", cfg.p);
  run.set("k_max", cfg.k_max);
  run.set("budget_cochain_dim", cfg.budget_cochain_dim);
  const GroupInput in = read_groups(run, a.groups, cfg);
  ResolutionCache cache;
  CohomologyOptions opts;
  opts.budget.max_cochain_dim = cfg.budget_cochain_dim;
  if (in.tower) {
    require(a.coefficients == "trivial" && a.subgroup.empty(), "cohomology --tower: only trivial coefficients");
    const ContinuousCohomologyReport r = continuous_cohomology(*in.tower, cfg.p, cfg.k_max, cache);
    Json stab = Json::array();
    for (bool b : r.stabilized) stab.push_back(b);
    run.result = Json{{"level_dims", r.level_dims},
                      {"inflation_ranks", r.inflation_ranks},
                      {"stabilized", stab},
                      {"surviving", r.surviving}};
    run.summary = "continuous cohomology at finite depth";
    return ExitCode::Positive;
  }
  const FiniteGroup& g = *in.group;
  run.set("coefficients", a.subgroup.empty() ? a.coefficients : "cosets");
  run.set("method", a.method);
  require(a.method == "resolution" || a.method == "bar", "--method must be resolution or bar");
  GModule m;
  std::optional<Subgroup> h;
  if (!a.subgroup.empty()) {
    const Json sj = run.read("subgroup", a.subgroup);
    const Json& gens = io::detail::field(sj, "generators", "subgroup");
    require(gens.is_array(), "subgroup.generators: expected a list of elements");
    std::vector<std::size_t> gv;
    for (const auto& x : gens) gv.push_back(io::parse_element(x, g));
    h = g.closure(gv);
    m = permutation_module(g, cosets(g, *h).action, cfg.p);
  } else if (a.coefficients == "trivial") {
    m = trivial_module(g, cfg.p);
  } else if (a.coefficients == "regular") {
    m = permutation_module(g, regular_action(g), cfg.p);
  } else {
    throw InvalidArgument("--coefficients must be trivial or regular");
  }
  const GradedDims dims = a.method == "bar" ? bar_cohomology(g, m, cfg.k_max, opts.budget) : cohomology(g, m, cfg.k_max, cache, opts);
  run.result = Json{{"group", io::to_json(g)}, {"module_dim", m.dim}, {"dims", dims}};
  run.summary = "cohomology dimensions";
  if (h) {
    const GradedDims sub = trivial_cohomology(subgroup_as_group(g, *h).group, cfg.p, cfg.k_max, cache);
    run.result["subgroup_order"] = h->size();
    run.result["subgroup_dims"] = sub;
    run.result["shapiro"] = sub == dims;
    if (sub != dims) throw InvariantViolation("cohomology: induced and subgroup dimensions differ");
    run.summary = "Shapiro comparison holds";
  }
  return ExitCode::Positive;
}

// ---------------------------------------------------------------------------
// rep

ExitCode cmd_rep(Run& run, const GroupArgs& a, const Config& cfg) {
  using namespace proflq;
  require_prime(cfg.p);
  run.set("p", cfg.p);
  run.set("rank", cfg.rank);
  run.set("budget_tuples", cfg.budget_tuples);
  const GroupInput in = read_groups(run, a, cfg);
  const ElementaryAbelian v{cfg.p, cfg.rank};
  if (in.tower) {
    run.result = io::to_json(rep_tower(v, *in.tower, cfg.rep_budget()), *in.tower);
    run.summary = "representation classes along the tower";
  } else {
    run.result = io::to_json(rep_classes(v, *in.group, cfg.rep_budget()));
    run.summary = "representation classes";
  }
  return ExitCode::Positive;
}

// ---------------------------------------------------------------------------
// lq

struct LqArgs {
  GroupArgs groups;
  bool dump_orbits = false;
  bool strata = false;
};

ExitCode cmd_lq(Run& run, const LqArgs& a, const Config& cfg) {
  using namespace proflq;
  require_prime(cfg.p);
  run.set("p", cfg.p);
  run.set("rank", cfg.rank);
  run.set("k_max", cfg.k_max);
  run.set("budget_cochain_dim", cfg.budget_cochain_dim);
  run.set("budget_tuples", cfg.budget_tuples);
  const GroupInput in = read_groups(run, a.groups, cfg);
  const ElementaryAbelian v{cfg.p, cfg.rank};
  const LqOptions opts = cfg.lq_options();
  ResolutionCache cache;
  if (in.tower) {
    const ProfiniteLqReport r = profinite_lq(v, *in.tower, cfg.k_max, cache, opts);
    for (std::size_t k = 0; k < r.levels.size(); ++k) require_lq(r.levels[k], in.tower->level(k), cache, opts);
    Json levels = Json::array(), threads = Json::array(), stab = Json::array();
    for (const auto& l : r.levels) levels.push_back(io::to_json(l));
    for (const auto& t : r.threads)
      threads.push_back(Json{{"thread", t.thread}, {"centralizers_surjective", t.centralizers_surjective}, {"inflation_ranks", t.inflation_ranks}});
    for (bool b : r.stabilized) stab.push_back(b);
    run.result = Json{{"levels", levels},
                      {"rep_tower", io::to_json(r.rep_tower, *in.tower)},
                      {"group_cohomology", Json{{"level_dims", r.group_cohomology.level_dims},
                                                {"inflation_ranks", r.group_cohomology.inflation_ranks},
                                                {"surviving", r.group_cohomology.surviving}}},
                      {"stable_threads", threads},
                      {"stabilized", stab},
                      {"limit_estimate", r.limit_estimate},
                      {"nontrivial_limit_class", r.nontrivial_limit_class()}};
    run.summary = "decomposition holds at every level";
    return ExitCode::Positive;
  }
  const FiniteGroup& g = *in.group;
  const LqReport r = lq_check(v, g, cfg.k_max, cache, opts);
  require_lq(r, g, cache, opts);
  run.result = io::to_json(r);
  if (a.dump_orbits) {
    run.set("dump_orbits", true);
    Json orbits = Json::array();
    for (const auto& o : dump_orbits(v, g, cfg.k_max, cache, opts)) orbits.push_back(io::to_json(o, g));
    run.result["orbits"] = orbits;
  }
  if (a.strata) {
    run.set("strata", true);
    const StrataReport s = strata_split(v, g, cfg.k_max, cache, opts);
    run.result["strata"] = Json{{"dims", s.strata},
                                {"group_cohomology", s.group_cohomology},
                                {"stratum0_is_group_cohomology", s.stratum0_is_group_cohomology},
                                {"totals_match", s.totals_match}};
    if (!s.ok()) throw InvariantViolation("lq: rank strata do not split the left side");
  }
  run.summary = "decomposition holds in every degree";
  return ExitCode::Positive;
}

// ---------------------------------------------------------------------------
// sep

struct SepArgs {
  std::string hom;
  bool sp = false;
};

ExitCode cmd_sep(Run& run, const SepArgs& a, const Config& cfg) {
  using namespace proflq;
  require(!a.hom.empty(), "sep: need --hom");
  require_prime(cfg.p);
  run.set("p", cfg.p);
  run.set("rank", cfg.rank);
  run.set("budget_tuples", cfg.budget_tuples);
  const GroupHom f = io::parse_hom(run.read("hom", a.hom), cfg.group_budget());
  const SepReport r = sep_check({cfg.p, cfg.rank}, f, cfg.rep_budget());
  run.result = io::to_json(r, f);
  if (a.sp) {
    run.set("sp", true);
    run.result["sp_functor"] = io::to_json(sp_functor_check(f, static_cast<std::size_t>(cfg.p), cfg.budget_group_order), f);
  }
  run.positive = r.ok();
  if (r.ok()) {
    run.summary = "f_V injective and full";
  } else if (!r.full()) {
    std::size_t c = 0;
    while (r.fullness[c].skipped || r.fullness[c].bijective()) ++c;
    const auto& w = r.fullness[c];
    run.summary = "fullness fails at class " + std::to_string(c) +
                  (w.witness ? ", witness " + f.target().label(*w.witness) : std::string());
  } else {
    run.summary = "f_V is not injective";
  }
  return proflq::exit_code_for(r.ok());
}

struct DistinguishArgs {
  std::string tower, x, y;
};

ExitCode cmd_distinguish(Run& run, const DistinguishArgs& a, const Config& cfg) {
  using namespace proflq;
  require(!a.tower.empty() && !a.x.empty() && !a.y.empty(), "sep distinguish: need --tower, --x and --y");
  GroupTower t = io::parse_group_tower(run.read("tower", a.tower), cfg.group_budget());
  if (cfg.depth) {
    run.set("depth", *cfg.depth);
    t = io::truncate(t, *cfg.depth);
  }
  const Json xj = run.read("x", a.x), yj = run.read("y", a.y);
  SeparationReport r;
  if (xj.contains("subgroups")) {
    run.set("mode", "subgroups");
    r = subgroup_conjugacy_distinguished(t, io::parse_subgroup_thread(xj, t), io::parse_subgroup_thread(yj, t));
  } else {
    run.set("mode", "elements");
    r = conjugacy_distinguished(t, io::parse_element_thread(xj, t), io::parse_element_thread(yj, t));
  }
  run.result = Json{{"depth", t.depth()}, {"distinguished", !r.exhausted()}};
  if (r.level) run.result["level"] = *r.level;
  run.positive = !r.exhausted();
  run.summary = r.level ? "separated at level " + std::to_string(*r.level) : "not separated up to depth " + std::to_string(t.depth());
  return proflq::exit_code_for(run.positive);
}

// ---------------------------------------------------------------------------
// selftest

struct SelftestArgs {
  std::vector<int> only;
};

ExitCode cmd_selftest(Run& run, const SelftestArgs& a, const Config& cfg) {
  proflq::SelftestOptions opts;
  opts.only = a.only;
  opts.jobs = cfg.jobs;
  run.set("seed", opts.seed);
  run.set("only", a.only);
  Json crit = Json::array();
  bool all = true;
  for (const auto& r : proflq::run_selftest(opts)) {
    std::cerr << proflq::format_criterion(r) << std::endl;
    Json c{{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"instances", r.instances}, {"limit_seconds", r.limit_seconds}};
    if (!r.detail.empty()) c["detail"] = r.detail;
    if (cfg.timings) c["seconds"] = r.seconds;
    crit.push_back(c);
    all = all && r.pass;
  }
  run.result = Json{{"criteria", crit}};
  run.positive = all;
  run.summary = all ? "all criteria pass" : "some criteria fail";
  return all ? ExitCode::Positive : ExitCode::Internal;
}

}  // namespace

int main(int argc, char** argv) {
  Config cfg;
  CLI::App app{"Exact computations with finite etale towers and mod-p cohomology", "proflq"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", kVersion);
  app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "table"}));
  app.add_option("--output", cfg.output, "Write the report to this file instead of stdout");
  app.add_flag("--timings", cfg.timings, "Include wall-clock timings in the report");
  app.add_option("--jobs", cfg.jobs, "Worker threads for selftest")->check(CLI::PositiveNumber);
  app.add_option("--budget-group-order", cfg.budget_group_order, "Largest group order accepted")->check(CLI::PositiveNumber);
  app.add_option("--budget-cochain-dim", cfg.budget_cochain_dim, "Largest cochain space dimension")->check(CLI::PositiveNumber);
  app.add_option("--budget-tuples", cfg.budget_tuples, "Largest |G|^r tuple scan")->check(CLI::PositiveNumber);
  app.add_option("--budget-level-bits", cfg.budget_level_bits, "Largest |T_k| log2|A| at a tower level")->check(CLI::PositiveNumber);
  app.add_option("--budget-hom-order", cfg.budget_hom_order, "Largest hom set in the adjunction check")->check(CLI::PositiveNumber);

  auto add_p = [&](CLI::App* s) { s->add_option("--p", cfg.p, "Prime"); };
  auto add_rank = [&](CLI::App* s) { s->add_option("--rank", cfg.rank, "Rank r of V = (Z/p)^r"); };
  auto add_kmax = [&](CLI::App* s) { s->add_option("--kmax", cfg.k_max, "Top cohomological degree"); };
  auto add_depth = [&](CLI::App* s) { s->add_option("--depth", cfg.depth, "Truncate towers to this depth"); };

  std::function<ExitCode(Run&)> action;
  std::string command;

  ModuleArgs mod;
  auto* s_mod = app.add_subcommand("module", "Invariant factors, duals, kernels and cokernels");
  s_mod->add_option("--module", mod.module, "Module literal")->required();
  s_mod->add_option("--map", mod.map, "Map literal");
  s_mod->callback([&] { command = "module"; action = [&](Run& r) { return cmd_module(r, mod); }; });

  EtaleArgs et;
  auto* s_et = app.add_subcommand("etale", "Etale spaces over a finite base");
  s_et->add_option("--space", et.space, "Etale space literal")->required();
  s_et->add_option("--with", et.with, "Second etale space over the same base");
  s_et->add_option("--adjunction", et.adjunction, "Third space L for the tensor-hom bijection");
  s_et->callback([&] { command = "etale"; action = [&](Run& r) { return cmd_etale(r, et, cfg); }; });

  TowerArgs tw;
  auto* s_tw = app.add_subcommand("tower", "Products, coproducts, duals and free decompositions of towers");
  s_tw->add_option("op", tw.op, "product | coproduct | freedec | dual")->required()->check(
      CLI::IsMember({"product", "coproduct", "freedec", "dual"}));
  s_tw->add_option("--tower", tw.tower, "Space tower");
  s_tw->add_option("--module", tw.module, "Constant coefficient module");
  s_tw->add_option("--etale", tw.etale, "Etale tower");
  s_tw->add_option("--map", tw.map, "Tower map for freedec");
  add_depth(s_tw);
  s_tw->callback([&] { command = "tower"; action = [&](Run& r) { return cmd_tower(r, tw, cfg); }; });

  CohomologyArgs co;
  auto* s_co = app.add_subcommand("cohomology", "Mod-p cohomology of a finite group or a tower");
  s_co->add_option("--group", co.groups.group, "Group");
  s_co->add_option("--tower", co.groups.tower, "Group tower");
  s_co->add_option("--coefficients", co.coefficients, "trivial | regular");
  s_co->add_option("--subgroup", co.subgroup, "Coefficients F_p[G/H] for {\"generators\": [...]}");
  s_co->add_option("--method", co.method, "resolution | bar");
  add_p(s_co);
  add_kmax(s_co);
  add_depth(s_co);
  s_co->callback([&] { command = "cohomology"; action = [&](Run& r) { return cmd_cohomology(r, co, cfg); }; });

  GroupArgs rp;
  auto* s_rp = app.add_subcommand("rep", "Conjugacy classes of homomorphisms from (Z/p)^r");
  s_rp->add_option("--group", rp.group, "Group");
  s_rp->add_option("--tower", rp.tower, "Group tower");
  add_p(s_rp);
  add_rank(s_rp);
  add_depth(s_rp);
  s_rp->callback([&] { command = "rep"; action = [&](Run& r) { return cmd_rep(r, rp, cfg); }; });

  LqArgs lq;
  auto* s_lq = app.add_subcommand("lq", "Centralizer decomposition of T_V H^*(G)");
  s_lq->add_option("--group", lq.groups.group, "Group");
  s_lq->add_option("--tower", lq.groups.tower, "Group tower");
  s_lq->add_flag("--dump-orbits", lq.dump_orbits, "Per-orbit cohomology");
  s_lq->add_flag("--strata", lq.strata, "Split the left side by image rank");
  add_p(s_lq);
  add_rank(s_lq);
  add_kmax(s_lq);
  add_depth(s_lq);
  s_lq->callback([&] { command = "lq"; action = [&](Run& r) { return cmd_lq(r, lq, cfg); }; });

  SepArgs sp;
  DistinguishArgs di;
  auto* s_sp = app.add_subcommand("sep", "Injectivity and fullness of f_V");
  s_sp->add_option("--hom", sp.hom, "Group homomorphism");
  s_sp->add_flag("--sp", sp.sp, "Also check the functor on p-subgroups");
  add_p(s_sp);
  add_rank(s_sp);
  s_sp->callback([&] {
    if (command.empty()) {
      command = "sep";
      action = [&](Run& r) { return cmd_sep(r, sp, cfg); };
    }
  });
  auto* s_di = s_sp->add_subcommand("distinguish", "First level separating two threads up to conjugacy");
  s_di->add_option("--tower", di.tower, "Group tower")->required();
  s_di->add_option("--x", di.x, "Thread")->required();
  s_di->add_option("--y", di.y, "Thread")->required();
  add_depth(s_di);
  s_di->callback([&] { command = "sep distinguish"; action = [&](Run& r) { return cmd_distinguish(r, di, cfg); }; });

  SelftestArgs st;
  auto* s_st = app.add_subcommand("selftest", "Run the acceptance criteria");
  s_st->add_option("--only", st.only, "Criterion ids");
  s_st->callback([&] { command = "selftest"; action = [&](Run& r) { return cmd_selftest(r, st, cfg); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : proflq::to_int(ExitCode::Usage);
  }

  try {
    Run run(command, cfg);
    const auto start = std::chrono::steady_clock::now();
    const ExitCode code = action(run);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const std::string text = run.render(seconds);
    if (cfg.output.empty()) {
      std::cout << text;
    } else {
      std::ofstream out(cfg.output, std::ios::binary);
      if (!out) throw proflq::InvalidArgument("cannot write '" + cfg.output + "'");
      out << text;
    }
    return proflq::to_int(code);
  } catch (const proflq::InvalidArgument& e) {
    std::cerr << "proflq: usage error: " << e.what() << "\n";
    return proflq::to_int(ExitCode::Usage);
  } catch (const proflq::BudgetExceeded& e) {
    std::cerr << "proflq: budget exceeded: " << e.what() << "\n";
    return proflq::to_int(ExitCode::Usage);
  } catch (const proflq::InvariantViolation& e) {
    std::cerr << "proflq: invariant violation: " << e.what() << "\n";
    return proflq::to_int(ExitCode::Internal);
  } catch (const std::exception& e) {
    std::cerr << "proflq: internal error: " << e.what() << "\n";
    return proflq::to_int(ExitCode::Internal);
  }
}
