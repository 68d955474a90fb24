#include "slocc/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <new>
#include <optional>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "slocc/error.hpp"
#include "slocc/io.hpp"
#include "slocc/ket.hpp"
#include "slocc/random.hpp"

namespace slocc::cli {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Config {
  std::uint64_t seed = 0;
  std::optional<int> restarts;
  std::optional<int> max_iter;
  std::optional<double> tol_als, tol_equiv, tol_product, tol_zero;
  std::string dims;
  std::vector<std::string> kets;
  std::vector<std::string> files;
  std::string traced;
  bool strict = false;
  std::string output = "json";
  // command specific
  bool normalize = false;
  bool random_map = false;
  std::string id;
  std::string kind = "omega0";
  std::string a = "1", b = "1", chi, alpha, beta, gamma;
  std::size_t m = 0, n = 0;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

Dims3 parse_dims(const std::string& s) {
  const auto parts = split(s, ',');
  if (parts.size() != 3) throw UsageError("--dims expects three comma-separated sizes, e.g. 2,2,2");
  Dims3 d{};
  for (std::size_t i = 0; i < 3; ++i) {
    const auto& p = parts[i];
    if (p.empty() || !std::all_of(p.begin(), p.end(), [](char c) { return c >= '0' && c <= '9'; }) || p.size() > 9)
      throw UsageError("bad dimension '" + p + "' in --dims");
    d[i] = std::stoul(p);
    if (d[i] == 0) throw UsageError("dimensions in --dims must be positive");
  }
  return d;
}

std::size_t parse_party(const std::string& s) {
  if (s == "A" || s == "a" || s == "0") return 0;
  if (s == "B" || s == "b" || s == "1") return 1;
  if (s == "C" || s == "c" || s == "2") return 2;
  if (!s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }) && s.size() < 6)
    return std::stoul(s);
  throw UsageError("bad party '" + s + "' (use A, B, C or a 0-based index)");
}

Complex parse_scalar(const std::string& s) {
  return parse_ket("(" + s + ")|000>", {1, 1, 1})(0, 0, 0);
}

std::vector<Complex> parse_scalars(const std::string& s) {
  std::vector<Complex> out;
  if (s.empty()) return out;
  for (const auto& p : split(s, ',')) out.push_back(parse_scalar(p));
  return out;
}

VectorC to_vector(const std::vector<Complex>& v, Eigen::Index n, const char* what) {
  if (v.empty()) return VectorC::Zero(n);
  if (static_cast<Eigen::Index>(v.size()) != n)
    throw UsageError(std::string(what) + " needs " + std::to_string(n) + " comma-separated values");
  VectorC out(n);
  for (Eigen::Index i = 0; i < n; ++i) out(i) = v[static_cast<std::size_t>(i)];
  return out;
}

// Inputs are the --ket values (with --dims) followed by the positional files.
std::size_t input_count(const Config& c) { return c.kets.size() + c.files.size(); }

Json input_json(const Config& c, std::size_t index) {
  if (index < c.kets.size()) {
    if (c.dims.empty()) throw UsageError("--ket needs --dims");
    return to_json(parse_ket(c.kets[index], parse_dims(c.dims), c.normalize));
  }
  return read_json_file(c.files.at(index - c.kets.size()));
}

Tensor3 input_tensor(const Config& c, std::size_t index) { return tensor_from_json(input_json(c, index)); }

void require_inputs(const Config& c, std::size_t n) {
  if (input_count(c) != n)
    throw UsageError("expected " + std::to_string(n) + " input tensor" + (n == 1 ? "" : "s") +
                     " (via --ket/--dims or JSON files), got " + std::to_string(input_count(c)));
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

struct Outcome {
  Json json;
  std::string text;
  bool inconclusive = false;
};

Outcome cmd_parse(const Config& c) {
  require_inputs(c, 1);
  const Tensor3 t = input_tensor(c, 0);
  return {to_json(t), print_ket(t)};
}

Outcome cmd_print(const Config& c) {
  require_inputs(c, 1);
  const std::string ket = print_ket(input_tensor(c, 0));
  return {Json{{"ket", ket}}, ket};
}

Outcome cmd_rank(const Config& c) {
  require_inputs(c, 1);
  CpOptions o;
  o.seed = c.seed;
  if (c.restarts) o.restarts = *c.restarts;
  if (c.max_iter) o.max_iter = *c.max_iter;
  if (c.tol_als) o.tol = *c.tol_als;
  const RankInterval r = rank_interval(input_tensor(c, 0), o);
  std::string text = "[" + std::to_string(r.lower) + ", " + std::to_string(r.upper) + "] lower by " +
                     to_string(r.lower_certificate) + ", upper by " + to_string(r.upper_certificate) + "; " + r.note;
  return {to_json(r), text, r.lower != r.upper};
}

Outcome cmd_detpoly(const Config& c) {
  require_inputs(c, 1);
  const HomPoly3 f = det_poly(input_tensor(c, 0));
  Json j = to_json(f);
  j["text"] = format_poly(f);
  return {j, format_poly(f)};
}

Outcome cmd_detpoly_equiv(const Config& c) {
  require_inputs(c, 2);
  EquivOptions o;
  o.seed = c.seed;
  if (c.restarts) o.restarts = *c.restarts;
  if (c.max_iter) o.max_iter = *c.max_iter;
  if (c.tol_equiv) o.tol = *c.tol_equiv;
  if (c.tol_zero) o.zero_tol = *c.tol_zero;
  const EquivVerdict v = detpoly_equiv_test(input_tensor(c, 0), input_tensor(c, 1), o);
  std::string text = to_string(v.kind);
  if (v.kind == VerdictKind::CertifiedObstruction) text += ": " + v.obstruction;
  else text += " (residual " + fmt(v.residual) + ")";
  return {to_json(v), text, v.kind == VerdictKind::NoCandidateFound};
}

Outcome cmd_ptrace(const Config& c) {
  require_inputs(c, 1);
  if (c.traced.empty()) throw UsageError("ptrace needs --traced");
  const Json in = input_json(c, 0);
  std::optional<DensityMatrix> rho;
  if (in.is_object() && in.contains("party_dims")) {
    rho = density_from_json(in);
  } else {
    rho = density_of(PureState::from_tensor(tensor_from_json(in)));
  }
  std::set<std::size_t> traced;
  for (const auto& p : split(c.traced, ',')) traced.insert(parse_party(p));
  const DensityMatrix red = partial_trace(*rho, traced);
  std::ostringstream text;
  const MatrixC& m = red.matrix();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index k = 0; k < m.cols(); ++k)
      text << (k ? " " : "") << fmt(m(i, k).real()) << (m(i, k).imag() < 0 ? "" : "+") << fmt(m(i, k).imag()) << "i";
    text << "\n";
  }
  std::string s = text.str();
  if (!s.empty()) s.pop_back();
  return {to_json(red), s};
}

ProductSearchOptions product_options(const Config& c) {
  ProductSearchOptions o;
  o.seed = c.seed;
  if (c.restarts) o.starts = *c.restarts;
  if (c.tol_product) o.tol = *c.tol_product;
  return o;
}

std::size_t single_party(const Config& c) {
  if (c.traced.empty()) throw UsageError("--traced is required");
  return parse_party(c.traced);
}

Outcome cmd_product_count(const Config& c) {
  require_inputs(c, 1);
  const auto r = range_product_count(PureState::from_tensor(input_tensor(c, 0)), single_party(c), product_options(c));
  return {to_json(r), std::to_string(r.independent_count) + " (" + to_string(r.exactness) + ")",
          r.exactness == Exactness::LowerBound};
}

Outcome cmd_range_compare(const Config& c) {
  require_inputs(c, 2);
  const auto r = range_criterion_compare(PureState::from_tensor(input_tensor(c, 0)),
                                         PureState::from_tensor(input_tensor(c, 1)), single_party(c),
                                         product_options(c));
  return {to_json(r), to_string(r.verdict) + ": " + r.reason, r.verdict == RangeVerdict::Inconclusive};
}

Outcome cmd_slocc_apply(const Config& c) {
  const Tensor3 t = [&] {
    if (c.random_map) {
      require_inputs(c, 1);
    } else if (input_count(c) != 2) {
      throw UsageError("slocc-apply needs a tensor and a map file, or --random");
    }
    return input_tensor(c, 0);
  }();
  const SloccMap m = c.random_map ? random_slocc(t.dims(), c.seed) : slocc_map_from_json(input_json(c, 1));
  const Tensor3 out = apply_slocc(t, m);
  return {Json{{"map", to_json(m)}, {"tensor", to_json(out)}}, print_ket(out)};
}

Outcome cmd_classify(const Config& c) {
  require_inputs(c, 1);
  const auto r = classify_2mn(input_tensor(c, 0));
  return {to_json(r), r.id ? *r.id : "no match: " + r.diagnostic, !r.id.has_value()};
}

Outcome cmd_catalog(const Config& c) {
  if (!c.id.empty()) {
    const auto& e = catalog_get(c.id);
    Json j = to_json(e);
    j["tensor"] = to_json(catalog_build(e.id));
    return {j, e.id + ": " + e.ket_text};
  }
  Json list = Json::array();
  std::string text;
  for (const auto& e : catalog_list()) {
    list.push_back(to_json(e));
    text += (text.empty() ? "" : "\n") + e.id + ": " + e.ket_text;
  }
  return {list, text};
}

Outcome state_outcome(const PureState& s) {
  Json j = to_json(s);
  std::string ket = print_ket(s.to_tensor());
  j["ket"] = ket;
  return {j, ket};
}

Outcome cmd_lhrgm(const Config& c) {
  require_inputs(c, 1);
  if (c.m == 0 || c.n == 0) throw UsageError("lhrgm needs --M and --N");
  const LhrgmKind kind = lhrgm_kind_from_string(c.kind);
  LhrgmParams p{parse_scalar(c.a), parse_scalar(c.b), parse_scalars(c.chi),
                PureState::from_tensor(input_tensor(c, 0))};
  if ((kind == LhrgmKind::Omega2 || kind == LhrgmKind::Omega3) && p.chi.empty()) {
    Rng rng(c.seed);
    for (std::size_t k = 0; k + 1 < c.n; ++k) p.chi.push_back(rng.complex_normal());
  }
  return state_outcome(lhrgm_build(kind, p, c.m, c.n));
}

Outcome cmd_build335(const Config& c) {
  require_inputs(c, 1);
  const PureState psi = PureState::from_tensor(input_tensor(c, 0));
  return state_outcome(build_335(psi, to_vector(parse_scalars(c.alpha), 5, "--alpha"),
                                 to_vector(parse_scalars(c.beta), 5, "--beta"),
                                 to_vector(parse_scalars(c.gamma), 5, "--gamma")));
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"SLOCC invariants of complex 3-way tensors", "slocc_cli"};
  app.require_subcommand(1);
  Config cfg;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--seed", cfg.seed, "Seed for every randomized step (default 0)");
    sub->add_option("--dims", cfg.dims, "Tensor dims for --ket, e.g. 2,2,2");
    sub->add_option("--ket", cfg.kets, "Input state in ket notation (repeatable)");
    sub->add_option("files", cfg.files, "Input JSON files");
    sub->add_option("--output", cfg.output, "Output format")->check(CLI::IsMember({"json", "text"}));
    sub->add_flag("--strict", cfg.strict, "Exit 4 on inconclusive verdicts");
    sub->add_flag("--normalize", cfg.normalize, "Normalize --ket inputs");
  };
  auto restarts = [&](CLI::App* sub) {
    sub->add_option("--restarts", cfg.restarts, "Number of random restarts")->check(CLI::PositiveNumber);
  };

  struct Command {
    const char* name;
    const char* help;
    Outcome (*fn)(const Config&);
  };
  const Command commands[] = {
      {"parse", "Parse a ket expression into tensor JSON", cmd_parse},
      {"print", "Print a tensor in ket notation", cmd_print},
      {"rank", "Tensor-rank interval with certificates", cmd_rank},
      {"detpoly", "Determinant polynomial of an n x n x 3 tensor", cmd_detpoly},
      {"detpoly-equiv", "Determinant-polynomial equivalence test", cmd_detpoly_equiv},
      {"ptrace", "Partial trace of a pure state or density matrix", cmd_ptrace},
      {"product-count", "Product vectors in the range of a reduced density", cmd_product_count},
      {"range-compare", "Range-criterion comparison of two states", cmd_range_compare},
      {"slocc-apply", "Apply local operators to a tensor", cmd_slocc_apply},
      {"classify2mn", "Classify a 2 x M x N tensor against the catalog", cmd_classify},
      {"catalog", "List catalog entries or show one", cmd_catalog},
      {"lhrgm", "Raise a 2 x M' x N' state with an Omega construction", cmd_lhrgm},
      {"build335", "Assemble a 3 x 3 x 5 state from its 2 x n x p part", cmd_build335},
  };
  std::vector<std::pair<CLI::App*, const Command*>> subs;
  for (const auto& cmd : commands) {
    CLI::App* sub = app.add_subcommand(cmd.name, cmd.help);
    common(sub);
    subs.emplace_back(sub, &cmd);
    const std::string name = cmd.name;
    if (name == "rank" || name == "detpoly-equiv" || name == "product-count" || name == "range-compare") restarts(sub);
    if (name == "rank" || name == "detpoly-equiv")
      sub->add_option("--max-iter", cfg.max_iter, "Iteration cap per restart")->check(CLI::PositiveNumber);
    if (name == "rank") sub->add_option("--tol-als", cfg.tol_als, "Relative residual for success")->check(CLI::PositiveNumber);
    if (name == "detpoly-equiv") {
      sub->add_option("--tol-equiv", cfg.tol_equiv, "Residual for CandidateFound")->check(CLI::PositiveNumber);
      sub->add_option("--tol-zero", cfg.tol_zero, "Relative zero test for polynomials")->check(CLI::PositiveNumber);
    }
    if (name == "product-count" || name == "range-compare") {
      sub->add_option("--tol-product", cfg.tol_product, "Rank-one decision tolerance")->check(CLI::PositiveNumber);
      sub->add_option("--traced", cfg.traced, "Traced party: A, B or C");
    }
    if (name == "ptrace") sub->add_option("--traced", cfg.traced, "Traced parties, comma separated (A,B,C or 0-based)");
    if (name == "slocc-apply") sub->add_flag("--random", cfg.random_map, "Use a seeded random invertible map");
    if (name == "catalog") sub->add_option("--id", cfg.id, "Show one entry with its tensor");
    if (name == "lhrgm") {
      sub->add_option("--kind", cfg.kind, "omega0, omega1, omega2 or omega3");
      sub->add_option("--a", cfg.a, "Coefficient a");
      sub->add_option("--b", cfg.b, "Coefficient b");
      sub->add_option("--chi", cfg.chi, "Comma-separated chi coefficients (random from --seed if omitted)");
      sub->add_option("--M", cfg.m, "Target second dimension")->check(CLI::PositiveNumber);
      sub->add_option("--N", cfg.n, "Target third dimension")->check(CLI::PositiveNumber);
    }
    if (name == "build335") {
      sub->add_option("--alpha", cfg.alpha, "Five comma-separated coefficients");
      sub->add_option("--beta", cfg.beta, "Five comma-separated coefficients");
      sub->add_option("--gamma", cfg.gamma, "Five comma-separated coefficients");
    }
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  const Command* chosen = nullptr;
  for (const auto& [sub, cmd] : subs)
    if (sub->parsed()) chosen = cmd;

  try {
    const Outcome o = chosen->fn(cfg);
    if (cfg.output == "text")
      out << o.text << "\n";
    else
      out << o.json.dump(2) << "\n";
    return cfg.strict && o.inconclusive ? kInconclusive : kOk;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const NumericError& e) {
    err << "error: " << e.what() << "\n";
    return kNumericError;
  } catch (const ResourceError& e) {
    err << "error: " << e.what() << "\n";
    return kNumericError;
  } catch (const std::bad_alloc&) {
    err << "error: out of memory\n";
    return kNumericError;
  }
}

}  // namespace slocc::cli
