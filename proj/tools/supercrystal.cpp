// supercrystal: command-line front end for the library.
// Exit codes: 0 success, 1 a checked property failed, 2 usage error.

#include "supercrystal/supercrystal.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace supercrystal;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Globals {
  Int p = 0;
  std::string parities;
  std::string format = "text";
  std::string out;
};

ParityContext require_context(const Globals& g) {
  if (g.parities.empty()) throw UsageError("--parities is required for this command");
  return ParityContext::from_parities(parse_parities(g.parities), g.p);
}

Weight require_weight(const ParityContext& ctx, const std::string& text) {
  Weight w(parse_int_list(text));
  if (w.rank() != ctx.rank()) {
    throw UsageError("weight has " + std::to_string(w.rank()) + " entries, context has rank " +
                     std::to_string(ctx.rank()));
  }
  return w;
}

IndexSet parse_index_set(const std::string& text, const ParityContext& ctx) {
  IndexSet out;
  for (Int v : parse_int_list(text)) {
    if (v < 1 || v > static_cast<Int>(ctx.rank())) throw UsageError("index " + std::to_string(v) + " out of range");
    out.push_back(static_cast<std::size_t>(v));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::size_t index_arg(Int v, const ParityContext& ctx, const char* name) {
  if (v < 1 || v > static_cast<Int>(ctx.rank())) throw UsageError(std::string("--") + name + " out of range");
  return static_cast<std::size_t>(v);
}

std::string format_parities(const ParityContext& ctx) {
  std::string s;
  for (int v : ctx.parities()) {
    if (!s.empty()) s += ',';
    s += std::to_string(v);
  }
  return s;
}

Int parse_residue(const std::string& text) {
  auto v = parse_int_list(text);
  if (v.size() != 1) throw UsageError("--r needs a single integer or 'all'");
  return v[0];
}

std::vector<Int> parse_primes(const std::string& text) {
  auto ps = parse_int_list(text);
  if (ps.empty()) throw UsageError("--p-list is empty");
  for (Int p : ps) {
    if (p != 0 && !is_prime(p)) throw UsageError("--p-list entries must be 0 or prime");
  }
  return ps;
}

std::string rational_str(const Rational& q) {
  std::ostringstream os;
  os << q;
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dual crystal, linkage and PBW computations for GL(m|n) in characteristic p"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--p", g.p, "characteristic (0 or a prime)")->capture_default_str();
  app.add_option("--parities", g.parities, "comma-separated 0/1 parity sequence, e.g. 1,1,0,0,0");
  app.add_option("--format", g.format, "text, json or dot")->check(CLI::IsMember({"text", "json", "dot"}))
      ->capture_default_str();
  app.add_option("--out", g.out, "write output to this file instead of stdout");

  std::string weight, r_text = "all", op, weights_file, A_text, B_text, suite;
  Int i_arg = 0, j_arg = 0, k_arg = 0, l_arg = 0, depth = 1, central_r = 0, z_r = 0;
  bool full = false;

  auto* context = app.add_subcommand("context", "print m, n, theta and rho");

  auto* signature = app.add_subcommand("signature", "raw and reduced r-signatures");
  signature->add_option("--weight", weight, "weight, comma-separated")->required()->allow_extra_args(false);
  signature->add_option("--r", r_text, "residue, or 'all' for every residue with a nonzero signature")
      ->capture_default_str();

  auto* apply = app.add_subcommand("apply", "apply one operation to a weight");
  apply->add_option("--op", op, "estar, fstar, oracle-estar, oracle-fstar, eps-phi, wt, flip, odd-reflection")
      ->required()
      ->check(CLI::IsMember({"estar", "fstar", "oracle-estar", "oracle-fstar", "eps-phi", "wt", "flip",
                             "odd-reflection"}));
  apply->add_option("--weight", weight)->required();
  apply->add_option("--r", r_text, "residue (for estar/fstar/eps-phi)");
  apply->add_option("--i", i_arg, "position (for odd-reflection)");

  auto* classify = app.add_subcommand("classify", "normal/good/conormal/cogood status of a position");
  classify->add_option("--weight", weight)->required();
  classify->add_option("--i", i_arg)->required();
  classify->add_option("--r", r_text, "residue, or 'all'")->capture_default_str();

  auto* graph = app.add_subcommand("graph", "crystal component around a weight");
  graph->add_option("--weight", weight)->required();
  graph->add_option("--depth", depth, "maximum number of operator applications")->capture_default_str()
      ->check(CLI::NonNegativeNumber);

  auto* blocks = app.add_subcommand("blocks", "partition a JSON array of weights by wt");
  blocks->add_option("--in", weights_file, "JSON file with an array of weights ('-' for stdin)")->required();

  auto* pbw = app.add_subcommand("pbw", "enveloping-superalgebra computations");
  pbw->require_subcommand(1);
  auto* lower = pbw->add_subcommand("lower", "the lowering operator S_{i,j}(A)");
  lower->add_option("--i", i_arg)->required();
  lower->add_option("--j", j_arg)->required();
  lower->add_option("--A", A_text, "comma-separated subset of (i..j)");
  lower->add_flag("--full", full, "print S~_{i,j}(A) instead of its Dist(B^-) part");
  auto* recur = pbw->add_subcommand("check-recurrence", "recurrence for S_{i,j}(A) at k in A");
  recur->add_option("--i", i_arg)->required();
  recur->add_option("--j", j_arg)->required();
  recur->add_option("--A", A_text);
  recur->add_option("--k", k_arg)->required();
  auto* commut = pbw->add_subcommand("check-commutator", "E_l S_{i,j}(A) modulo J_l");
  commut->add_option("--i", i_arg)->required();
  commut->add_option("--j", j_arg)->required();
  commut->add_option("--A", A_text);
  commut->add_option("--l", l_arg)->required();
  auto* central = pbw->add_subcommand("check-central", "[e_ij, Z~_r] = 0 for every generator");
  central->add_option("--r", central_r)->required()->check(CLI::PositiveNumber);
  auto* vscalar = pbw->add_subcommand("verma-scalar", "scalars on the highest-weight vector");
  vscalar->add_option("--weight", weight)->required();
  vscalar->add_option("--z", z_r, "report Z_r on v_lambda for this r")->check(CLI::PositiveNumber);
  vscalar->add_option("--i", i_arg);
  vscalar->add_option("--j", j_arg);
  vscalar->add_option("--A", A_text);
  vscalar->add_option("--B", B_text);

  auto* verify = app.add_subcommand("verify", "run property suites");
  std::size_t max_rank = 4, min_rank = 2;
  Int window = 4, max_r = 4;
  std::uint64_t seed = 1;
  std::string p_list;
  std::vector<std::string> suite_choices = suite_names();
  suite_choices.push_back("all");
  verify->add_option("suite", suite, "suite name or 'all'")->required()->check(CLI::IsMember(suite_choices));
  verify->add_option("--max-rank", max_rank)->capture_default_str()->check(CLI::Range(1, 5));
  verify->add_option("--min-rank", min_rank)->capture_default_str()->check(CLI::Range(1, 5));
  verify->add_option("--coeff-window", window)->capture_default_str()->check(CLI::Range(0, 10));
  verify->add_option("--p-list", p_list, "characteristics to sweep (default 0,2,3,5, or --p if given)");
  verify->add_option("--seed", seed)->capture_default_str();
  verify->add_option("--max-r", max_r)->capture_default_str()->check(CLI::Range(1, 8));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  std::ostringstream out;
  int status = 0;
  try {
    if (*context) {
      auto ctx = require_context(g);
      if (g.format == "json") {
        out << json{{"p", ctx.p()}, {"parities", ctx.parities()}, {"m", ctx.m()}, {"n", ctx.n()},
                    {"theta", ctx.theta()}, {"rho", ctx.rho()}}.dump() << '\n';
      } else {
        out << "m=" << ctx.m() << " n=" << ctx.n() << " p=" << ctx.p() << '\n';
        out << "theta=" << format_weight(Weight(ctx.theta())) << '\n';
        out << "rho=" << format_weight(Weight(ctx.rho())) << '\n';
      }
    } else if (*signature) {
      auto ctx = require_context(g);
      auto w = require_weight(ctx, weight);
      std::vector<Int> rs;
      bool all = r_text == "all";
      if (all) {
        for (Int r : relevant_residues(ctx, w)) rs.push_back(r);
      } else {
        rs.push_back(canonical_residue(ctx, parse_residue(r_text)));
      }
      json arr = json::array();
      for (Int r : rs) {
        auto raw = r_signature(ctx, w, r);
        auto red = reduce_signature(raw);
        if (g.format == "json") {
          arr.push_back({{"r", r}, {"signature", raw.str()}, {"reduced", red.str()}});
        } else {
          if (all) out << "r=" << r << ": ";
          out << raw.str() << " / " << red.str() << '\n';
        }
      }
      if (g.format == "json") out << (all ? arr : arr[0]).dump() << '\n';
    } else if (*apply) {
      auto ctx = require_context(g);
      auto w = require_weight(ctx, weight);
      auto need_r = [&] {
        if (r_text == "all") throw UsageError("--op " + op + " needs --r");
        return parse_residue(r_text);
      };
      auto emit_weight = [&](const std::optional<Weight>& x) {
        if (g.format == "json") {
          out << (x ? weight_to_json(*x) : json(nullptr)).dump() << '\n';
        } else {
          out << (x ? format_weight(*x) : "none") << '\n';
        }
      };
      if (op == "estar") {
        emit_weight(e_star(ctx, w, need_r()));
      } else if (op == "fstar") {
        emit_weight(f_star(ctx, w, need_r()));
      } else if (op == "oracle-estar") {
        emit_weight(tensor_dual_oracle(ctx, w, need_r(), CrystalOp::E));
      } else if (op == "oracle-fstar") {
        emit_weight(tensor_dual_oracle(ctx, w, need_r(), CrystalOp::F));
      } else if (op == "eps-phi") {
        auto ep = eps_phi_star(ctx, w, need_r());
        if (g.format == "json") {
          out << json{{"eps", ep.eps}, {"phi", ep.phi}}.dump() << '\n';
        } else {
          out << "eps=" << ep.eps << " phi=" << ep.phi << '\n';
        }
      } else if (op == "wt") {
        auto x = wt_of(ctx, w);
        out << (g.format == "json" ? affine_to_json(x).dump() : format_affine(x)) << '\n';
      } else if (op == "flip") {
        auto [fctx, fw] = flip_map(ctx, w);
        if (g.format == "json") {
          out << json{{"context", context_to_json(fctx)}, {"weight", weight_to_json(fw)}}.dump() << '\n';
        } else {
          out << "parities=" << format_parities(fctx)
              << " weight=" << format_weight(fw) << '\n';
        }
      } else {
        auto [sctx, sw] = s_i_map(ctx, w, index_arg(i_arg, ctx, "i"));
        if (g.format == "json") {
          out << json{{"context", context_to_json(sctx)}, {"weight", weight_to_json(sw)}}.dump() << '\n';
        } else {
          out << "parities=" << format_parities(sctx)
              << " weight=" << format_weight(sw) << '\n';
        }
      }
    } else if (*classify) {
      auto ctx = require_context(g);
      auto w = require_weight(ctx, weight);
      std::size_t i = index_arg(i_arg, ctx, "i");
      bool all = r_text == "all";
      std::vector<Int> rs;
      if (all) {
        rs = relevant_residues(ctx, w);
      } else {
        rs.push_back(parse_residue(r_text));
      }
      json arr = json::array();
      for (Int r : rs) {
        auto c = classify_index(ctx, w, i, r);
        if (all && c.kind == IndexKind::NotClassified) continue;
        if (g.format == "json") {
          arr.push_back({{"r", c.r}, {"class", to_string(c.kind)}});
        } else {
          out << "r=" << c.r << ": " << to_string(c.kind) << '\n';
        }
      }
      if (g.format == "json") out << arr.dump() << '\n';
    } else if (*graph) {
      auto ctx = require_context(g);
      auto gr = crystal_component(ctx, require_weight(ctx, weight), static_cast<std::size_t>(depth));
      if (g.format == "json") {
        out << graph_to_json(gr).dump() << '\n';
      } else {
        out << graph_to_dot(gr);
      }
    } else if (*blocks) {
      auto ctx = require_context(g);
      json input;
      try {
        if (weights_file == "-") {
          input = json::parse(std::cin);
        } else {
          std::ifstream f(weights_file);
          if (!f) throw UsageError("cannot read " + weights_file);
          input = json::parse(f);
        }
      } catch (const json::exception& e) {
        throw UsageError(std::string("bad weights JSON: ") + e.what());
      }
      if (!input.is_array()) throw UsageError("weights JSON must be an array");
      std::vector<Weight> ws;
      for (const auto& x : input) {
        Weight w = weight_from_json(x);
        ctx.require_weight(w);
        ws.push_back(w);
      }
      auto bs = partition_blocks(ctx, ws);
      if (g.format == "json") {
        out << blocks_to_json(bs).dump() << '\n';
      } else {
        for (const auto& b : bs) {
          out << format_affine(b.wt) << ':';
          for (const auto& w : b.weights) out << " (" << format_weight(w) << ')';
          out << '\n';
        }
      }
    } else if (*pbw) {
      auto ctx = require_context(g);
      PbwEngine<Rational> eng(ctx, GeneratorOrder::standard(ctx.rank()));
      LoweringCache<Rational> cache(eng);
      if (*lower) {
        auto A = parse_index_set(A_text, ctx);
        auto low = lowering(eng, index_arg(i_arg, ctx, "i"), index_arg(j_arg, ctx, "j"), A);
        out << eng.dump(full ? low.full : low.reduced);
      } else if (*recur) {
        auto A = parse_index_set(A_text, ctx);
        std::size_t i = index_arg(i_arg, ctx, "i"), j = index_arg(j_arg, ctx, "j");
        require_lowering_args(ctx, i, j, A);
        auto res = recurrence_check(cache, i, j, A, index_arg(k_arg, ctx, "k"));
        out << (res.holds ? "holds" : "fails: " + res.detail) << '\n';
        status = res.holds ? 0 : 1;
      } else if (*commut) {
        auto A = parse_index_set(A_text, ctx);
        std::size_t i = index_arg(i_arg, ctx, "i"), j = index_arg(j_arg, ctx, "j");
        std::size_t l = index_arg(l_arg, ctx, "l");
        require_lowering_args(ctx, i, j, A);
        if (l < i || l >= j) throw UsageError("--l must satisfy i <= l < j");
        if (commutator_case(i, j, A, l) == CommutatorCase::Uncovered) {
          throw UsageError("l = i = j - 1 is not covered by any case of the E_l S_{i,j}(A) identity");
        }
        PbwEngine<Rational> el(ctx, GeneratorOrder::el_last(ctx.rank(), l));
        auto res = commutator_identity_check(cache, el, i, j, A, l);
        out << "case " << to_string(commutator_case(i, j, A, l)) << ": " << (res.holds ? "holds" : "fails") << '\n';
        status = res.holds ? 0 : 1;
      } else if (*central) {
        CentralElements<Rational> ce(eng);
        auto zt = ce.z_tilde(central_r);
        std::size_t bad = 0;
        for (const auto& gen : eng.order().sequence()) {
          if (!eng.super_bracket(eng.gen(gen), zt).is_zero()) {
            out << "[" << to_string(gen) << ", Z~_" << central_r << "] != 0\n";
            ++bad;
          }
        }
        out << (bad ? "not central" : "central") << " (" << zt.terms.size() << " terms)\n";
        status = bad ? 1 : 0;
      } else if (*vscalar) {
        auto w = require_weight(ctx, weight);
        json j = json::object();
        if (z_r > 0) {
          CentralElements<Rational> ce(eng);
          auto v = eng.verma_apply(ce.z(z_r), w);
          BigInt want = z_scalar(ctx, w, z_r);
          bool ok = v.is_scalar() && v.scalar() == Rational(want);
          j["z"] = {{"r", z_r}, {"action", rational_str(v.scalar())}, {"Z_r", want.str()}, {"matches", ok}};
          if (g.format != "json") out << "Z_" << z_r << ": action=" << v.scalar() << " Z_r(lambda)=" << want << '\n';
          if (!ok) status = 1;
        }
        if (i_arg != 0 || j_arg != 0) {
          std::size_t i = index_arg(i_arg, ctx, "i"), jj = index_arg(j_arg, ctx, "j");
          auto A = parse_index_set(A_text, ctx), B = parse_index_set(B_text, ctx);
          LoweringScalar res;
          try {
            res = lowering_scalar_check(cache, i, jj, A, B, w);
          } catch (const std::invalid_argument& e) {
            throw UsageError(std::string("hypothesis violated: ") + e.what());
          }
          j["raising"] = {{"scalar", rational_str(res.scalar)}, {"product", rational_str(res.product)},
                          {"sign", res.sign}, {"matches", res.matches}};
          if (g.format != "json") {
            out << "scalar=" << res.scalar << " product=" << res.product << " sign=" << res.sign
                << (res.matches ? " matches" : " MISMATCH") << '\n';
          }
          if (!res.matches) status = 1;
        }
        if (z_r == 0 && i_arg == 0 && j_arg == 0) throw UsageError("verma-scalar needs --z or --i/--j");
        if (g.format == "json") out << j.dump() << '\n';
      }
    } else if (*verify) {
      SweepConfig cfg;
      cfg.max_rank = max_rank;
      cfg.min_rank = min_rank;
      cfg.window = window;
      cfg.seed = seed;
      cfg.max_r = max_r;
      if (min_rank > max_rank) throw UsageError("--min-rank exceeds --max-rank");
      if (!p_list.empty()) {
        cfg.primes = parse_primes(p_list);
      } else if (app.count("--p")) {
        cfg.primes = {g.p};
      }
      if (!g.parities.empty()) {
        auto par = parse_parities(g.parities);
        if (par.size() > 5) throw UsageError("verification sweeps support rank at most 5");
        cfg.parities = par;
        cfg.min_rank = std::min(cfg.min_rank, par.size());
        cfg.max_rank = std::max(cfg.max_rank, par.size());
      }
      std::vector<std::string> names = suite == "all" ? suite_names() : std::vector<std::string>{suite};
      json arr = json::array();
      for (const auto& n : names) {
        auto rep = run_suite(n, cfg);
        if (!rep.passed()) status = 1;
        if (g.format == "json") {
          arr.push_back(report_to_json(rep));
        } else {
          out << format_report(rep);
        }
      }
      if (g.format == "json") out << arr.dump(2) << '\n';
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }

  if (g.out.empty()) {
    std::cout << out.str();
  } else {
    std::ofstream f(g.out);
    if (!f) {
      std::cerr << "error: cannot write " << g.out << '\n';
      return 2;
    }
    f << out.str();
  }
  return status;
}
