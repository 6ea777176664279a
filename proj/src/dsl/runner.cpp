#include <algorithm>
#include <atomic>
#include <chrono>
#include <set>
#include <stdexcept>
#include <thread>

#include "ck/certificate.hpp"
#include "ck/homology.hpp"

namespace ck {

using nlohmann::json;

namespace {

json to_json(const Polynomial& f) { return format(f); }

json to_json(const std::vector<Polynomial>& fs) {
  json out = json::array();
  for (const auto& f : fs) out.push_back(format(f));
  return out;
}

json to_json(const ModuleElement& v) { return to_json(v.entries); }

json to_json(const RegSeqFailure& f);
json to_json(const RadicalRefutation& r);

template <class T>
json optional_json(const std::optional<T>& v) {
  return v ? to_json(*v) : json(nullptr);
}

json to_json(const RadicalWitness& w) {
  return {{"element", format(w.element)},
          {"member", w.member},
          {"exponent", w.exponent ? json(*w.exponent) : json(nullptr)},
          {"auxiliary_hash", w.auxiliary_hash}};
}

json to_json(const std::vector<RadicalWitness>& ws) {
  json out = json::array();
  for (const auto& w : ws) out.push_back(to_json(w));
  return out;
}

json to_json(const RegSeqCertificate& c) {
  json steps = json::array();
  for (const auto& s : c.steps) steps.push_back({{"element", format(s.element)}, {"prefix_hash", s.prefix_hash}});
  return {{"sequence", to_json(c.sequence)}, {"steps", steps}};
}

json to_json(const RegSeqFailure& f) { return {{"index", f.index}, {"witness", format(f.witness)}}; }

json to_json(const DimensionReport& d, const PolyRing& ring) {
  json lead = json::array(), indep = json::array();
  for (const auto& m : d.leading_monomials) lead.push_back(format(m, ring));
  for (auto i : d.independent_set) indep.push_back(ring.variables()[i]);
  return {{"dimension", d.dimension},
          {"ambient_dimension", d.ambient_dimension},
          {"height", d.height},
          {"height_definition", DimensionReport::kHeightDefinition},
          {"unit", d.unit},
          {"independent_set", indep},
          {"leading_monomials", lead}};
}

json to_json(const ProjectiveRankCertificate& c) {
  return {{"certified", c.certified},
          {"rank", c.rank},
          {"minors", to_json(c.minors)},
          {"cofactors", to_json(c.cofactors)},
          {"failure", c.failure},
          {"witness", optional_json(c.witness)}};
}

json to_json(const PresentationMatrix& p) {
  return {{"generators", p.generators()}, {"relations", format(p.relations)}};
}

json to_json(const RadicalEqualityCertificate& c) {
  return {{"left_in_right", to_json(c.left_in_right)}, {"right_in_left", to_json(c.right_in_left)}};
}

json to_json(const RadicalRefutation& r) {
  return {{"generator", format(r.generator)},
          {"side", r.generator_from_left ? "left" : "right"},
          {"witness", to_json(r.witness)}};
}

json to_json(const CICertificate& c) {
  return {{"c", format(c.c)}, {"d", format(c.d)}, {"ideal_hash", c.ideal_hash}, {"regular", to_json(c.regular)}};
}

json to_json(const STCICertificate& c) {
  return {{"f", format(c.f)},
          {"g", format(c.g)},
          {"regular", to_json(c.regular)},
          {"radical", to_json(c.radical)},
          {"dimension", to_json(c.dimension, *c.ideal.ring())}};
}

json to_json(const std::vector<std::string>& log) { return json(log); }

struct Outcome {
  Verdict verdict = Verdict::inconclusive;
  json witnesses = json::object();
};

Outcome verdict_of(bool ok, json witnesses) {
  return {ok ? Verdict::verified : Verdict::refuted, std::move(witnesses)};
}

const Argument& arg(const CheckCommand& c, std::size_t i) { return *c.args.at(i); }
const IdealHandle& ideal_arg(const CheckCommand& c, std::size_t i) { return *arg(c, i).ideal; }

/// Base ideal of an optional "mod B" slot, or the zero ideal of the ring.
IdealHandle base_arg(const CheckCommand& c, std::size_t i) {
  if (c.args.at(i)) return *c.args[i]->ideal;
  return IdealHandle::zero(c.spec);
}

Outcome dispatch(const CheckCommand& c, const RunOptions& o) {
  const Budget& b = o.budget;
  SearchOptions search{o.seed, o.budget, o.trials, o.degree_bound};
  const std::string& name = c.name;

  if (name == "member") {
    const auto& f = arg(c, 0).polys.front();
    const auto& I = ideal_arg(c, 1);
    if (!ideal_member(f, I, b)) return verdict_of(false, {{"normal_form", format(normal_form(f, I, b))}});
    const auto cof = lift(f, I.generators(), I.spec(), b);
    return verdict_of(true, {{"cofactors", cof ? to_json(*cof) : json(nullptr)}, {"self_check", cof.has_value()}});
  }
  if (name == "radical-member") {
    const auto& I = ideal_arg(c, 1);
    const auto w = radical_member(arg(c, 0).polys.front(), I, b);
    json j = to_json(w);
    j["self_check"] = replay(w, I, b);
    return verdict_of(w.member, j);
  }
  if (name == "equal") {
    const auto& I = ideal_arg(c, 0);
    const auto& J = ideal_arg(c, 1);
    json j = {{"left_hash", I.hash(b)}, {"right_hash", J.hash(b)}};
    const bool eq = ideal_equal(I, J, b);
    if (!eq) {
      for (const auto& [from, into, side] : {std::tuple{&I, &J, "left"}, std::tuple{&J, &I, "right"}}) {
        const auto& gens = from->generators();
        const auto it = std::find_if(gens.begin(), gens.end(), [&](const Polynomial& g) { return !ideal_member(g, *into, b); });
        if (it != gens.end()) {
          j["separating_generator"] = format(*it);
          j["side"] = side;
          break;
        }
      }
    }
    return verdict_of(eq, j);
  }
  if (name == "radical-equal") {
    const auto r = radical_equal(ideal_arg(c, 0), ideal_arg(c, 1), b);
    if (const auto* cert = std::get_if<RadicalEqualityCertificate>(&r)) {
      json j = to_json(*cert);
      j["self_check"] = replay(*cert, b);
      return verdict_of(true, j);
    }
    return verdict_of(false, to_json(std::get<RadicalRefutation>(r)));
  }
  if (name == "nzd") {
    const auto r = is_nzd(arg(c, 0).polys.front(), ideal_arg(c, 1), b);
    return verdict_of(r.nzd, {{"quotient_hash", r.quotient_hash}, {"witness", optional_json(r.witness)}});
  }
  if (name == "regular-sequence") {
    const auto r = is_regular_sequence(arg(c, 0).polys, base_arg(c, 1), b);
    if (const auto* cert = std::get_if<RegSeqCertificate>(&r)) {
      json j = to_json(*cert);
      j["self_check"] = replay(*cert, b);
      return verdict_of(true, j);
    }
    return verdict_of(false, to_json(std::get<RegSeqFailure>(r)));
  }
  if (name == "dimension") {
    const auto& I = ideal_arg(c, 0);
    return {Verdict::verified, to_json(dimension_height(I, b), *I.ring())};
  }
  if (name == "koszul-exact") {
    const auto& pair = arg(c, 0).polys;
    RingSpec spec = c.spec;
    if (c.args.at(1)) spec = spec.with_base(c.args[1]->ideal->generators());
    const auto r = koszul2_exactness(pair[0], pair[1], spec, b);
    const auto syz = syzygies(spec, std::span<const Polynomial>(pair), b);
    json rows = json::array();
    for (const auto& row : syz.rows) rows.push_back(to_json(row));
    return verdict_of(r.exact, {{"annihilator", optional_json(r.annihilator)},
                                {"extra_syzygy", optional_json(r.extra_syzygy)},
                                {"syzygies", rows}});
  }
  if (name == "resolution") {
    const std::size_t length = c.args.at(1) ? static_cast<std::size_t>(c.args[1]->integer) : 3;
    const auto r = free_resolution(ideal_arg(c, 0), length, b);
    json maps = json::array();
    for (const auto& m : r.maps) maps.push_back(format(m));
    return {r.verified ? Verdict::verified : Verdict::inconclusive,
            {{"ranks", r.ranks}, {"maps", maps}, {"terminated", r.terminated}, {"minimal", FreeResolution::kMinimal}}};
  }
  if (name == "ext") {
    const auto e = ext_module(ideal_arg(c, 0), static_cast<std::size_t>(arg(c, 1).integer), b);
    return verdict_of(e.locally_cyclic, {{"degree", e.degree}, {"presentation", to_json(e.presentation)}});
  }
  if (name == "conormal-rank") {
    const auto p = conormal_presentation(ideal_arg(c, 0), b);
    const auto cert = projective_rank_certificate(p, static_cast<std::size_t>(arg(c, 1).integer), b);
    json j = to_json(cert);
    j["conormal"] = to_json(p);
    if (cert.certified) j["self_check"] = replay(cert, p, b);
    return verdict_of(cert.certified, j);
  }
  if (name == "lci") {
    const auto& I = ideal_arg(c, 0);
    const auto r = lci_certificate(I, b);
    if (const auto* cert = std::get_if<LCIProxyCertificate>(&r)) {
      return verdict_of(true, {{"hypotheses", LCIProxyCertificate::kAmbientHypotheses},
                               {"dimension", to_json(cert->dimension, *I.ring())},
                               {"conormal", to_json(cert->conormal)},
                               {"rank", to_json(cert->rank)},
                               {"self_check", replay(*cert, b)}});
    }
    const auto& ref = std::get<LCIRefutation>(r);
    return verdict_of(false, {{"dimension", to_json(ref.dimension, *I.ring())}, {"rank", to_json(ref.failed)}});
  }
  if (name == "mod-square") {
    const auto r = mod_square_generation(ideal_arg(c, 0), arg(c, 1).polys, b);
    return verdict_of(r.generated, {{"failing_generator", optional_json(r.failing_generator)}, {"hash", r.hash}});
  }
  if (name == "regularize") {
    const auto& I = ideal_arg(c, 0);
    const auto r = regularize_generators(I, arg(c, 1).polys, search);
    json perts = json::array();
    for (const auto& p : r.perturbations) {
      perts.push_back({{"position", p.position},
                       {"lambda", format(p.lambda)},
                       {"sources", p.sources},
                       {"coefficients", to_json(p.coefficients)},
                       {"seed", p.seed},
                       {"trial", p.trial}});
    }
    json j = {{"inputs", to_json(r.inputs)},
              {"generators", to_json(r.generators)},
              {"perturbations", perts},
              {"certificate", r.certificate ? to_json(*r.certificate) : json(nullptr)},
              {"log", to_json(r.log)},
              {"trials_used", r.trials_used}};
    if (r.verdict == Verdict::verified) j["self_check"] = replay(r, I, b);
    return {r.verdict, j};
  }
  if (name == "ci") {
    const auto& pair = arg(c, 1).polys;
    const auto r = ci_from_free_conormal(ideal_arg(c, 0), pair[0], pair[1], search);
    json j = {{"certificate", r.certificate ? to_json(*r.certificate) : json(nullptr)},
              {"log", to_json(r.log)},
              {"trials_used", r.trials_used}};
    if (r.certificate) j["self_check"] = replay(*r.certificate, b);
    return {r.verdict, j};
  }
  if (name == "stci") {
    const auto& pair = arg(c, 1).polys;
    const auto r = stci_verify(ideal_arg(c, 0), pair[0], pair[1], b);
    if (const auto* cert = std::get_if<STCICertificate>(&r)) {
      json j = to_json(*cert);
      j["self_check"] = replay(*cert, b);
      return verdict_of(true, j);
    }
    const auto& ref = std::get<STCIRefutation>(r);
    return verdict_of(false, {{"failed_check", ref.failed_check},
                              {"height", ref.height},
                              {"regular", optional_json(ref.regular)},
                              {"radical", optional_json(ref.radical)}});
  }
  if (name == "stci-search") {
    const auto r = stci_search(ideal_arg(c, 0), search);
    json j = {{"field", r.field},
              {"certificate", r.certificate ? to_json(*r.certificate) : json(nullptr)},
              {"ci", r.ci ? to_json(*r.ci) : json(nullptr)},
              {"log", to_json(r.log)},
              {"trials_used", r.trials_used}};
    if (r.certificate) j["self_check"] = replay(*r.certificate, b);
    return {r.verdict, j};
  }
  if (name == "local-generation") {
    const auto& I = ideal_arg(c, 0);
    const int bound = c.args.at(2) ? static_cast<int>(c.args[2]->integer) : 2;
    const auto points = rational_points(I, bound);
    const auto r = local_generation_check(I, arg(c, 1).polys, points, b);
    const auto& field = I.ring()->field();
    json pts = json::array();
    for (const auto& p : r.points) {
      json coords = json::array();
      for (const auto& s : p) coords.push_back(field.format(s));
      pts.push_back(coords);
    }
    const bool all = std::all_of(r.locally_equal.begin(), r.locally_equal.end(), [](bool v) { return v; });
    return verdict_of(all, {{"points", pts},
                            {"locally_equal", r.locally_equal},
                            {"globally_equal", r.globally_equal},
                            {"conductor", to_json(r.conductor.generators())}});
  }
  throw InputError("unknown command '" + name + "'");
}

json ring_echo(const CheckCommand& c) {
  const auto& ring = *c.spec.ring;
  return {{"name", c.ring},
          {"field", ring.field().name()},
          {"variables", ring.variables()},
          {"order", ring.order().name()},
          {"base", to_json(c.spec.base)}};
}

json hashes(const CheckCommand& c, const Budget& b) {
  json out = json::object();
  for (const auto& a : c.args)
    if (a && a->kind == Argument::Kind::Ideal) out[a->ref] = a->ideal->hash(b);
  if (c.spec.is_quotient()) out["(base)"] = IdealHandle::zero(c.spec).hash(b);
  return out;
}

}  // namespace

int exit_code(Verdict v) {
  switch (v) {
    case Verdict::verified:
      return 0;
    case Verdict::refuted:
      return 1;
    case Verdict::inconclusive:
      break;
  }
  return 2;
}

std::string replay_hash(const json& document) {
  json stripped = document;
  stripped.erase("timings");
  stripped.erase("replay_hash");
  return sha256_hex(stripped.dump());
}

CertificateFile run_command(const Session& session, std::size_t index, const RunOptions& options) {
  const auto commands = session.commands();
  if (index >= commands.size()) throw InputError("no check command #" + std::to_string(index));
  const CheckCommand& c = *commands[index];

  const auto start = std::chrono::steady_clock::now();
  Outcome outcome;
  json gb_hashes;
  try {
    gb_hashes = hashes(c, options.budget);
    outcome = dispatch(c, options);
  } catch (const BudgetExceeded& e) {
    outcome = {Verdict::inconclusive, {{"budget_exceeded", e.what()}}};
  } catch (const InputError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  } catch (const std::domain_error& e) {
    throw InputError(e.what());
  } catch (const RingMismatch& e) {
    throw InputError(e.what());
  }
  if (gb_hashes.is_null()) gb_hashes = json::object();
  const auto elapsed =
      std::chrono::duration_cast<std::chrono::microseconds>(std::chrono::steady_clock::now() - start).count();

  CertificateFile file;
  file.verdict = outcome.verdict;
  json& d = file.document;
  d["schema"] = kCertificateSchema;
  d["session"] = print(session);
  d["command"] = print(c);
  d["command_index"] = index;
  d["ring"] = ring_echo(c);
  d["verdict"] = to_string(outcome.verdict);
  d["witnesses"] = std::move(outcome.witnesses);
  d["seed"] = options.seed;
  d["budgets"] = {{"gb_steps", options.budget.gb_steps},
                  {"trials", options.trials},
                  {"degree_bound", options.degree_bound ? json(*options.degree_bound) : json(nullptr)}};
  d["gb_hashes"] = std::move(gb_hashes);
  d["timings"] = {{"wall_us", elapsed}};
  d["replay_hash"] = replay_hash(d);
  return file;
}

std::vector<CommandOutcome> run_session(const Session& session, const RunOptions& options, unsigned jobs) {
  const std::size_t n = session.commands().size();
  std::vector<CommandOutcome> out(n);
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        out[i].certificate = run_command(session, i, options);
      } catch (const InputError& e) {
        out[i].error = e.what();
      }
    }
  };
  const unsigned threads = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(n)));
  if (threads == 1) {
    worker();
    return out;
  }
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  return out;
}

int ReplayReport::exit_code() const {
  switch (status) {
    case Status::reproduced:
      return ck::exit_code(verdict);
    case Status::defect:
      return kExitReplayDefect;
    case Status::malformed:
    case Status::schema_mismatch:
      break;
  }
  return kExitInputError;
}

namespace {

/// Lists the keys (recursively, as paths) where two trees differ.
void diff(const json& stored, const json& fresh, const std::string& path, std::vector<std::string>& out) {
  if (stored == fresh) return;
  if (stored.is_object() && fresh.is_object()) {
    std::set<std::string> keys;
    for (const auto& [k, _] : stored.items()) keys.insert(k);
    for (const auto& [k, _] : fresh.items()) keys.insert(k);
    for (const auto& k : keys) {
      if (!stored.contains(k))
        out.push_back(path + "/" + k + ": missing from the file");
      else if (!fresh.contains(k))
        out.push_back(path + "/" + k + ": not produced on replay");
      else
        diff(stored[k], fresh[k], path + "/" + k, out);
    }
    return;
  }
  out.push_back(path + ": stored " + stored.dump() + ", recomputed " + fresh.dump());
}

std::optional<Verdict> parse_verdict(const json& v) {
  for (auto verdict : {Verdict::verified, Verdict::refuted, Verdict::inconclusive})
    if (v.is_string() && v.get<std::string>() == to_string(verdict)) return verdict;
  return std::nullopt;
}

}  // namespace

ReplayReport replay_certificate(const json& doc) {
  ReplayReport report;
  if (!doc.is_object() || !doc.contains("schema")) {
    report.defects.push_back("not a certificate object");
    return report;
  }
  if (doc["schema"] != kCertificateSchema) {
    report.status = ReplayReport::Status::schema_mismatch;
    report.defects.push_back("unsupported schema " + doc["schema"].dump() + ", expected \"" + kCertificateSchema + "\"");
    return report;
  }
  for (const char* key : {"session", "command", "command_index", "verdict", "seed", "budgets", "replay_hash"}) {
    if (!doc.contains(key)) {
      report.defects.push_back(std::string("missing field '") + key + "'");
      return report;
    }
  }
  const auto verdict = parse_verdict(doc["verdict"]);
  if (!verdict) {
    report.defects.push_back("unknown verdict " + doc["verdict"].dump());
    return report;
  }
  report.verdict = *verdict;
  report.status = ReplayReport::Status::defect;

  if (doc["replay_hash"] != replay_hash(doc)) report.defects.push_back("replay_hash does not match the contents");

  try {
    const auto& budgets = doc["budgets"];
    RunOptions options;
    options.seed = doc["seed"].get<std::uint64_t>();
    options.budget.gb_steps = budgets.at("gb_steps").get<std::size_t>();
    options.trials = budgets.at("trials").get<std::size_t>();
    if (!budgets.at("degree_bound").is_null()) options.degree_bound = budgets["degree_bound"].get<unsigned>();

    const Session session = parse_session(doc["session"].get<std::string>());
    const auto index = doc["command_index"].get<std::size_t>();
    const auto fresh = run_command(session, index, options);
    if (fresh.verdict != report.verdict)
      report.defects.push_back(std::string("verdict: stored ") + to_string(report.verdict) + ", recomputed " +
                               to_string(fresh.verdict));
    json stored = doc, recomputed = fresh.document;
    for (json* j : {&stored, &recomputed}) {
      j->erase("timings");
      j->erase("replay_hash");
      j->erase("verdict");
    }
    diff(stored, recomputed, "", report.defects);
    const auto& w = fresh.document["witnesses"];
    if (w.contains("self_check") && w["self_check"] != true) report.defects.push_back("witness self-check failed");
  } catch (const std::exception& e) {
    report.defects.push_back(std::string("cannot recompute: ") + e.what());
  }
  if (report.defects.empty()) report.status = ReplayReport::Status::reproduced;
  return report;
}

std::vector<ReplayReport> replay_text(std::string_view text) {
  const json doc = json::parse(text, nullptr, false);
  if (doc.is_discarded()) {
    ReplayReport r;
    r.defects.push_back("not valid JSON");
    return {r};
  }
  std::vector<ReplayReport> out;
  if (doc.is_array()) {
    for (const auto& d : doc) out.push_back(replay_certificate(d));
  } else {
    out.push_back(replay_certificate(doc));
  }
  return out;
}

}  // namespace ck
