// quiverctl: command-line front end for quiver signal processing.
//
// Exit codes: 0 success, 1 negative verdict (iso found no isomorphism),
// 2 usage or validation error (JSON diagnostic on stderr).

#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include <quiversp/quiversp.hpp>

namespace {

using namespace quiversp;

constexpr int kExitOk = 0;
constexpr int kExitNegative = 1;
constexpr int kExitError = 2;

struct Inputs {
  std::string quiver;
  std::vector<std::string> reps;
  std::vector<std::string> signals;
  std::vector<std::string> filters;
  std::vector<std::string> complexes;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
  std::size_t max_len = 0;
  std::string mode;
  std::size_t degree = 0;
  int trials = kDefaultIsoTrials;
  int max_rounds = 8;
  bool verify = false;
  std::string path;
  std::string base;
  std::string emit;
};

void emit(const Json& j) { std::cout << canonical_dump(j); }

void fail(const std::string& kind, const std::string& message, Json extra = Json::object()) {
  Json err = {{"kind", kind}, {"message", message}};
  for (auto& [k, v] : extra.items()) err[k] = v;
  std::cerr << canonical_dump(Json{{"error", err}});
}

RankTolerance tolerance(const Inputs& in) {
  return in.tol ? RankTolerance::relative(*in.tol) : RankTolerance{};
}

std::uint64_t require_seed(const Inputs& in, const std::string& what) {
  if (!in.seed) throw ValidationError(what + " is randomized and requires --seed");
  return *in.seed;
}

Workspace load(const Inputs& in, std::size_t rep_index = 0) {
  WorkspaceFiles files;
  if (!in.quiver.empty()) files.quiver = in.quiver;
  if (rep_index < in.reps.size()) files.rep = in.reps[rep_index];
  files.signals = in.signals;
  files.filters = in.filters;
  files.complexes = in.complexes;
  return load_workspace(files);
}

template <typename T>
const T& need(const std::optional<T>& v, const std::string& flag) {
  if (!v) throw ValidationError("missing required input " + flag);
  return *v;
}

template <typename T>
const T& need_one(const std::vector<T>& v, const std::string& flag) {
  if (v.size() != 1) throw ValidationError("expected exactly one " + flag + " input");
  return v.front();
}

int cmd_validate(const Inputs& in) {
  const Workspace ws = load(in);
  if (!in.emit.empty()) {
    if (in.emit == "quiver") {
      emit(to_json(need(ws.quiver, "-q")));
    } else if (in.emit == "rep") {
      emit(to_json(need(ws.rep, "-r")));
    } else if (in.emit == "signal") {
      emit(to_json(need_one(ws.signals, "-x")));
    } else if (in.emit == "filter") {
      emit(to_json(need_one(ws.filters, "-f")));
    } else if (in.emit == "complex") {
      emit(to_json(need_one(ws.complexes, "-c")));
    } else {
      throw ValidationError("--emit must be one of quiver, rep, signal, filter, complex");
    }
    return kExitOk;
  }
  Json out = {{"valid", true}};
  if (ws.quiver) {
    out["quiver"] = {{"nodes", ws.quiver->node_count()},
                     {"arrows", ws.quiver->arrow_count()},
                     {"acyclic", is_acyclic(*ws.quiver)}};
  }
  if (ws.rep) out["rep"] = {{"total_dim", ws.rep->total_dim()}};
  out["signals"] = ws.signals.size();
  out["filters"] = ws.filters.size();
  out["complexes"] = ws.complexes.size();
  emit(out);
  return kExitOk;
}

int cmd_filter(const Inputs& in) {
  const Workspace ws = load(in);
  const Representation& rep = need(ws.rep, "-r");
  emit(to_json(apply_filter(rep, need_one(ws.filters, "-f"), need_one(ws.signals, "-x"))));
  return kExitOk;
}

int cmd_shift(const Inputs& in) {
  const Workspace ws = load(in);
  const Representation& rep = need(ws.rep, "-r");
  const Quiver& q = rep.quiver();
  if (!in.path.empty() || !in.base.empty()) {
    if (!in.path.empty() && !in.base.empty()) {
      throw ValidationError("give either --path or --base, not both");
    }
    Path p = Path::trivial(q, 0);
    if (!in.base.empty()) {
      p = Path::trivial(q, in.base);
    } else {
      std::vector<std::string> ids;
      std::stringstream ss(in.path);
      for (std::string id; std::getline(ss, id, ',');) ids.push_back(id);
      p = Path::from_ids(q, ids);
    }
    emit(to_json(shift_operator(rep, p), q));
    return kExitOk;
  }
  const FilterElement& c = need_one(ws.filters, "-f");
  emit(to_json(ShiftMatrix{filter_matrix(rep, c), rep.offsets()}, q));
  return kExitOk;
}

int cmd_paths(const Inputs& in) {
  const Workspace ws = load(in);
  const Quiver& q = need(ws.quiver, "-q");
  Json paths = Json::array();
  for (const Path& p : enumerate_paths(q, in.max_len)) {
    Json j = to_json(p);
    j["tail"] = q.node_id(p.tail());
    j["head"] = q.node_id(p.head());
    j["length"] = p.length();
    paths.push_back(std::move(j));
  }
  emit({{"count", paths.size()}, {"paths", paths}});
  return kExitOk;
}

int cmd_iso(const Inputs& in) {
  if (in.reps.size() != 2) throw ValidationError("iso needs two representations: -r A -r B");
  const std::uint64_t seed = require_seed(in, "iso");
  const Workspace a = load(in, 0);
  const Workspace b = load(in, 1);
  const IsoResult r = is_isomorphic(*a.rep, *b.rep, in.trials, seed, tolerance(in));
  Json out = {{"isomorphic", r.isomorphic}, {"witness", nullptr}};
  if (r.witness) out["witness"] = to_json(a.rep->quiver(), *r.witness);
  emit(out);
  return r.isomorphic ? kExitOk : kExitNegative;
}

int cmd_decompose(const Inputs& in) {
  const Workspace ws = load(in);
  const Representation& rep = need(ws.rep, "-r");
  const Quiver& q = rep.quiver();
  if (in.mode == "barcode") {
    emit(to_json(barcode_interval(rep, tolerance(in))));
  } else if (in.mode == "generic") {
    GenericOptions opts;
    opts.seed = require_seed(in, "decompose --mode generic");
    opts.max_rounds = in.max_rounds;
    opts.verify = in.verify;
    if (in.tol) opts.tol = opts.piece_tol = tolerance(in);
    emit(to_json(generic_decompose(rep, opts)));
  } else if (in.mode == "fourier") {
    const QuiverSignal& x = need_one(ws.signals, "-x");
    emit(to_json(q, fourier_decompose(rep, x)));
  } else if (in.mode == "factors") {
    Json factors = Json::object();
    const auto f = composition_factors(rep);
    for (std::size_t i = 0; i < f.size(); ++i) factors[q.node_id(i)] = f[i];
    emit({{"factors", factors}, {"semisimple", is_semisimple(rep)}});
  } else {
    throw ValidationError("--mode must be one of barcode, generic, fourier, factors");
  }
  return kExitOk;
}

int cmd_tda(const Inputs& in) {
  const Workspace ws = load(in);
  const FilteredComplex& c = need_one(ws.complexes, "-c");
  const Representation rep = persistence_representation(c, in.degree);
  emit({{"degree", in.degree},
        {"betti", rep.dims()},
        {"barcode", to_json(barcode_interval(rep, tolerance(in)))}});
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Signal processing on quiver representations"};
  app.require_subcommand(1);
  Inputs in;

  auto quiver_opt = [&](CLI::App* sub) {
    sub->add_option("-q,--quiver", in.quiver, "Quiver JSON file");
  };
  auto rep_opt = [&](CLI::App* sub) {
    sub->add_option("-r,--rep", in.reps, "Representation JSON file");
  };
  auto tol_opt = [&](CLI::App* sub) {
    sub->add_option("--tol", in.tol,
                    "Rank tolerance override: singular values <= tol * sigma_max count as zero");
  };
  auto seed_opt = [&](CLI::App* sub) {
    sub->add_option("--seed", in.seed, "Seed for randomized operations");
  };

  auto* validate = app.add_subcommand("validate", "Load and cross-check artifacts");
  quiver_opt(validate);
  rep_opt(validate);
  validate->add_option("-x,--signal", in.signals, "Signal JSON file");
  validate->add_option("-f,--filter", in.filters, "Filter JSON file");
  validate->add_option("-c,--complex", in.complexes, "Filtered complex JSON file");
  validate->add_option("--emit", in.emit, "Print the canonical form of one artifact")
      ->check(CLI::IsMember({"quiver", "rep", "signal", "filter", "complex"}));

  auto* filter = app.add_subcommand("filter", "Apply a filter: y = rho(c) x");
  quiver_opt(filter);
  rep_opt(filter);
  filter->add_option("-f,--filter", in.filters, "Filter JSON file")->required();
  filter->add_option("-x,--signal", in.signals, "Signal JSON file")->required();

  auto* shift = app.add_subcommand("shift", "Materialize rho(p) or rho(c) as a dense matrix");
  quiver_opt(shift);
  rep_opt(shift);
  shift->add_option("-f,--filter", in.filters, "Filter JSON file");
  shift->add_option("--path", in.path, "Comma-separated arrow ids, first applied first");
  shift->add_option("--base", in.base, "Node id of a trivial path");

  auto* paths = app.add_subcommand("paths", "Enumerate paths up to a given length");
  quiver_opt(paths);
  paths->add_option("--max-len", in.max_len, "Maximum path length")->required();

  auto* iso = app.add_subcommand("iso", "Randomized isomorphism test of two representations");
  quiver_opt(iso);
  rep_opt(iso);
  seed_opt(iso);
  tol_opt(iso);
  iso->add_option("--trials", in.trials, "Random samples from Hom(A, B)");

  auto* decompose = app.add_subcommand("decompose", "Decompose a representation");
  quiver_opt(decompose);
  rep_opt(decompose);
  seed_opt(decompose);
  tol_opt(decompose);
  decompose->add_option("-x,--signal", in.signals, "Signal JSON file (fourier mode)");
  decompose->add_option("--mode", in.mode, "barcode | generic | fourier | factors")
      ->required()
      ->check(CLI::IsMember({"barcode", "generic", "fourier", "factors"}));
  decompose->add_option("--max-rounds", in.max_rounds, "Split attempts per summand (generic)");
  decompose->add_flag("--verify", in.verify, "Check the summands against the input (generic)");

  auto* tda = app.add_subcommand("tda", "Persistence barcode of a filtered complex");
  tda->add_option("-c,--complex", in.complexes, "Filtered complex JSON file")->required();
  tda->add_option("--degree", in.degree, "Homology degree k")->required();
  tol_opt(tda);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    fail("usage", e.what());
    return kExitError;
  }

  try {
    if (*validate) return cmd_validate(in);
    if (*filter) return cmd_filter(in);
    if (*shift) return cmd_shift(in);
    if (*paths) return cmd_paths(in);
    if (*iso) return cmd_iso(in);
    if (*decompose) return cmd_decompose(in);
    if (*tda) return cmd_tda(in);
  } catch (const NotSemisimple& e) {
    fail("not_semisimple", e.what(), {{"arrow", e.arrow()}, {"norm", e.norm()}});
    return kExitError;
  } catch (const UnsupportedQuiver& e) {
    fail("unsupported_quiver", e.what());
    return kExitError;
  } catch (const NumericalError& e) {
    fail("numerical", e.what());
    return kExitError;
  } catch (const Error& e) {
    fail("validation", e.what());
    return kExitError;
  } catch (const std::exception& e) {
    fail("internal", e.what());
    return kExitError;
  }
  return kExitError;
}
