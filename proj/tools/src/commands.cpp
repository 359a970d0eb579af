#include "spinham_tools/commands.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>
#include <vector>

#include "spinham/spinham.hpp"
#include "spinham_tools/matrix_file.hpp"

namespace spinham::cli {

using nlohmann::json;

namespace {

struct Common {
  bool json = false;
  std::optional<double> c;
  std::optional<double> tol;
};

void add_common(CLI::App *sub, Common &common, double default_tol) {
  sub->add_flag("--json", common.json, "Machine-readable output");
  sub->add_option("--c", common.c, "Speed of light in atomic units");
  sub->add_option("--tol", common.tol, "Contract tolerance")->default_str(CLI::detail::to_string(default_tol));
}

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "% .12e", v);
  return buf;
}

void print_real(std::ostream &out, const std::string &title, const RMatrix &m) {
  out << title << ":\n";
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    out << "  ";
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      out << ' ' << num(m(r, c));
    }
    out << '\n';
  }
}

void print_complex(std::ostream &out, const std::string &title, const CMatrix &m) {
  out << title << ":\n";
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    out << "  ";
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      out << " (" << num(m(r, c).real()) << ',' << num(m(r, c).imag()) << ')';
    }
    out << '\n';
  }
}

void print_vector(std::ostream &out, const std::string &title, const RVector &v) {
  out << title << ':';
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    out << ' ' << num(v(k));
  }
  out << '\n';
}

void emit(std::ostream &out, const json &doc) { out << doc.dump(2) << '\n'; }

void write_file(const std::string &path, const std::string &text) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) {
    throw io::InputError(path + ": cannot write file");
  }
  f << text;
}

json report_header() { return json{{"schema_version", io::kSchemaVersion}}; }

// spin-matrices ---------------------------------------------------------------

struct SpinMatricesCmd {
  Common common;
  int two_s = 1;

  int run(std::ostream &out) const {
    const SpinMatrices sm = spin_matrices(SpinQuantum(two_s));
    double residual = 0.0;
    for (int u = 0; u < 3; ++u) {
      const int v = (u + 1) % 3;
      const int w = (u + 2) % 3;
      residual = std::max(residual, max_abs(commutator(sm[u], sm[v]) - kI * sm[w]));
    }
    const double tol = common.tol.value_or(1e-13);
    if (common.json) {
      json doc = io::to_json(io::from_spin(sm));
      doc["commutator_residual"] = residual;
      emit(out, doc);
    } else {
      out << "two_s: " << two_s << "  m: " << sm.s.dim() << '\n';
      print_complex(out, "S_x", sm.sx);
      print_complex(out, "S_y", sm.sy);
      print_complex(out, "S_z", sm.sz);
      out << "commutator residual: " << num(residual) << '\n';
    }
    return residual <= tol ? kOk : kContractViolation;
  }
};

// principal-axes --------------------------------------------------------------

struct PrincipalAxesCmd {
  Common common;
  std::string input;
  bool table = false;
  double zero_row = Tolerances::zero_row;

  int run(std::ostream &out) const {
    const io::MatrixFile f = io::read_matrix_file(input);
    const GMatrixSmall g = io::to_g(f);
    const PrincipalDecomposition pd = principal_axes(g, zero_row);
    const double tol = common.tol.value_or(Tolerances::principal_residual);
    if (common.json) {
      json doc = report_header();
      doc["g_values"] = io::real_vector_json(pd.g_values);
      doc["g_eigenvalues"] = io::real_vector_json(pd.g_eigs);
      doc["det_sign"] = pd.det_sign;
      doc["singular"] = pd.singular;
      doc["o_r"] = io::real_matrix_json(pd.o_r);
      doc["o_f"] = io::real_matrix_json(pd.o_f);
      doc["w"] = io::real_matrix_json(pd.w);
      doc["residual"] = pd.g_diag_residual;
      emit(out, doc);
    } else {
      print_vector(out, "g-values", pd.g_values);
      out << "det sign: " << (pd.det_sign < 0 ? '-' : '+') << (pd.singular ? "  (singular)" : "") << '\n';
      print_real(out, "O_r", pd.o_r);
      print_real(out, "O_f", pd.o_f);
      out << "residual: " << num(pd.g_diag_residual) << '\n';
    }
    return pd.g_diag_residual <= tol ? kOk : kContractViolation;
  }
};

// extract ---------------------------------------------------------------------

struct ExtractCmd {
  Common common;
  std::string input;
  std::string output;
  std::string method = "general";

  int run(std::ostream &out, std::ostream &err) const {
    const io::MatrixFile f = io::read_matrix_file(input);
    const ZeemanTriple zt = io::to_zeeman(f);
    const double c = resolve_c(common.c, f.c);
    const double tol = common.tol.value_or(Tolerances::model_span);
    const SpinMatrices sm = spin_matrices(zt.spin());

    GMatrixSmall g;
    double residual = 0.0;
    if (method == "doublet") {
      g = extract_g_doublet(zt, c, common.tol.value_or(Tolerances::kramers_structure));
      const ZeemanTriple rebuilt = build_zeeman(g, sm, c);
      for (int u = 0; u < 3; ++u) {
        residual = std::max(residual, max_abs(rebuilt[u] - zt[u]));
      }
    } else if (method == "general") {
      const GExtraction ext = extract_g_general(zt, sm, c);
      g = ext.g;
      residual = ext.span_residual;
    } else {
      throw io::InputError("--method must be general or doublet");
    }
    if (method == "general" && residual > tol) {
      err << "extract: Zeeman matrices are not linear in S (span residual " << num(residual) << ")\n";
      return kModelViolation;
    }

    const io::MatrixFile gf = io::from_g(g, f.two_s, c);
    if (!output.empty()) {
      write_file(output, io::serialize(gf));
    }
    if (common.json) {
      json doc = io::to_json(gf);
      doc["span_residual"] = residual;
      emit(out, doc);
    } else {
      print_real(out, "g", g.matrix());
      out << "span residual: " << num(residual) << '\n';
    }
    return kOk;
  }
};

// splittings ------------------------------------------------------------------

struct SplittingsCmd {
  Common common;
  std::string input;
  std::vector<double> field;

  int run(std::ostream &out) const {
    const io::MatrixFile f = io::read_matrix_file(input);
    const GMatrixSmall g = io::to_g(f);
    const double c = resolve_c(common.c, f.c);
    const SpinMatrices sm = spin_matrices(SpinQuantum(f.two_s));
    const Vec3 b_field(field.at(0), field.at(1), field.at(2));
    const Splitting sp = splittings_closed_form(g, b_field, sm, c);

    const CMatrix bs = sm.dot(sp.b);
    const HermitianEigen numeric = hermitian_eigen(bs);
    const double level_dev = (sp.levels - numeric.values).cwiseAbs().maxCoeff();
    const double vec_res = max_abs(bs * sp.vectors - sp.vectors * sp.levels.cast<Complex>().asDiagonal());
    const double tol = common.tol.value_or(1e-12);

    if (common.json) {
      json doc = report_header();
      doc["b"] = io::real_vector_json(sp.b);
      doc["levels"] = io::real_vector_json(sp.levels);
      doc["numeric_levels"] = io::real_vector_json(numeric.values);
      doc["level_deviation"] = level_dev;
      doc["eigenvector_residual"] = vec_res;
      doc["eigenvectors"] = io::complex_matrix_json(sp.vectors);
      emit(out, doc);
    } else {
      print_vector(out, "b", sp.b);
      print_vector(out, "levels (Hartree)", sp.levels);
      print_vector(out, "numeric levels", numeric.values);
      out << "level deviation: " << num(level_dev) << "\neigenvector residual: " << num(vec_res) << '\n';
    }
    return (level_dev <= tol && vec_res <= 10.0 * tol) ? kOk : kContractViolation;
  }
};

// alt-diag --------------------------------------------------------------------

json alt_json(const AltDiagResult &r) {
  json doc;
  doc["g_diag"] = io::real_matrix_json(r.g_diag.matrix());
  doc["residual"] = r.residual;
  doc["g_tilde"] = io::real_matrix_json(r.g_tilde.matrix());
  doc["g33"] = r.g33;
  doc["eigen_consistency"] = r.eigen_consistency;
  doc["gamma"] = r.gamma;
  doc["betas"] = io::real_vector_json(r.betas);
  doc["alphas"] = io::real_vector_json(r.alphas);
  doc["branch"] = r.branch;
  doc["eta"] = r.eta ? json(*r.eta) : json(nullptr);
  doc["eta_consistency"] = r.eta_consistency ? json(*r.eta_consistency) : json(nullptr);
  doc["fallback"] = r.fallback;
  doc["degenerate_hz"] = r.degenerate_hz;
  doc["irrep_distance"] = r.membership.distance;
  doc["irrep_sign"] = r.membership.sign;
  doc["u"] = io::complex_matrix_json(r.u);
  return doc;
}

struct AltDiagCmd {
  Common common;
  std::string input;

  int run(std::ostream &out) const {
    const io::MatrixFile f = io::read_matrix_file(input);
    const ZeemanTriple zt = io::to_zeeman(f);
    const double c = resolve_c(common.c, f.c);
    const SpinMatrices sm = spin_matrices(zt.spin());
    const AltDiagResult r = alt_diagonalize(zt, sm, c);
    const double tol = common.tol.value_or(Tolerances::alt_residual);

    if (common.json) {
      json doc = report_header();
      doc.update(alt_json(r));
      emit(out, doc);
    } else {
      print_real(out, "g (diagonal frame)", r.g_diag.matrix());
      out << "residual: " << num(r.residual) << '\n';
      out << "gamma: " << num(r.gamma) << '\n';
      if (r.alphas.size() > 0) {
        print_vector(out, "alphas", r.alphas);
      }
      if (r.eta) {
        out << "eta: " << num(*r.eta) << '\n';
      }
      out << "irrep distance: " << num(r.membership.distance) << (r.fallback ? "  (row-frame fallback)" : "") << '\n';
    }
    const bool ok = r.residual <= tol && r.membership.distance <= Tolerances::irrep_membership;
    return ok ? kOk : kContractViolation;
  }
};

// cross-validate --------------------------------------------------------------

struct CrossValidateCmd {
  Common common;
  std::string input;
  int trials = -1;
  std::uint64_t seed = 0;
  std::optional<int> two_s;

  int run(std::ostream &out, std::ostream &err) const {
    std::optional<io::MatrixFile> f;
    if (!input.empty()) {
      f = io::read_matrix_file(input);
      io::to_g(*f);
    }
    const int ts = two_s.value_or(f ? f->two_s : 1);
    const SpinMatrices sm = spin_matrices(SpinQuantum(ts));
    const double c = resolve_c(common.c, f ? f->c : std::nullopt);
    const double tol = common.tol.value_or(Tolerances::cross_validate);
    const int n_trials = trials >= 0 ? trials : (f ? 0 : 100);

    int failures = 0;
    double worst_dev = 0.0;
    double worst_irrep = 0.0;
    json cases = json::array();
    auto check = [&](const GMatrixSmall &g, const std::string &label) {
      json entry{{"case", label}};
      try {
        const CrossValidation cv = cross_validate(g, sm, c, tol);
        worst_dev = std::max(worst_dev, cv.max_deviation);
        worst_irrep = std::max(worst_irrep, cv.alt.membership.distance);
        const bool irrep_ok = cv.alt.membership.distance <= Tolerances::irrep_membership;
        if (!irrep_ok) {
          ++failures;
        }
        entry["g_values"] = io::real_vector_json(cv.principal.g_values);
        entry["alt_values"] = io::real_vector_json(cv.alt_values);
        entry["det_sign"] = cv.principal.det_sign;
        entry["alt_det_sign"] = cv.alt_det_sign;
        entry["max_deviation"] = cv.max_deviation;
        entry["irrep_distance"] = cv.alt.membership.distance;
        entry["ok"] = irrep_ok;
      } catch (const InconsistencyError &e) {
        ++failures;
        entry["ok"] = false;
        entry["error"] = e.what();
        err << label << ": " << e.what() << '\n';
      }
      return entry;
    };

    if (f) {
      cases.push_back(check(io::to_g(*f), "input"));
    }
    for (int t = 0; t < n_trials; ++t) {
      FixtureSpec spec;
      spec.seed = derive_seed(seed, static_cast<std::uint64_t>(t));
      spec.s = sm.s;
      cases.push_back(check(random_g(spec), "trial " + std::to_string(t)));
    }

    if (common.json) {
      json doc = report_header();
      doc["two_s"] = ts;
      doc["seed"] = seed;
      doc["trials"] = n_trials;
      doc["cases"] = std::move(cases);
      doc["max_deviation"] = worst_dev;
      doc["max_irrep_distance"] = worst_irrep;
      doc["failures"] = failures;
      emit(out, doc);
    } else {
      for (const auto &entry : cases) {
        out << entry["case"].get<std::string>() << ": " << (entry["ok"].get<bool>() ? "ok" : "FAILED");
        if (entry.contains("max_deviation")) {
          out << "  deviation " << num(entry["max_deviation"].get<double>()) << "  irrep "
              << num(entry["irrep_distance"].get<double>());
        }
        out << '\n';
      }
      out << "max deviation: " << num(worst_dev) << "\nmax irrep distance: " << num(worst_irrep)
          << "\nfailures: " << failures << '\n';
    }
    return failures == 0 ? kOk : kContractViolation;
  }
};

// verify ----------------------------------------------------------------------

struct VerifyCmd {
  Common common;
  int two_s = 1;
  int trials = 100;
  std::uint64_t seed = 0;
  bool random_rep = false;

  int run(std::ostream &out) const {
    const SpinQuantum s(two_s);
    AntiunitaryRep k = kramers_rep(s);
    if (random_rep) {
      k = random_equivalent_rep(k, derive_seed(seed, 0xffffffffull));
    }
    const HermitianOp op = random_tr_odd_hermitian(k, seed);
    const TheoremReport rep = verify_theorems(k, op, trials, seed);
    const double tol = common.tol.value_or(1e-10);

    auto opt = [](const std::optional<double> &v) { return v ? json(*v) : json(nullptr); };
    if (common.json) {
      json doc = report_header();
      doc["two_s"] = two_s;
      doc["parity"] = rep.parity;
      doc["trials"] = rep.trials;
      doc["seed"] = seed;
      doc["norm_equality"] = rep.norm_equality;
      doc["kramers_overlap"] = opt(rep.kramers_overlap);
      doc["kramers_sign_flip"] = opt(rep.kramers_sign_flip);
      doc["nonmagnetic_expectation"] = opt(rep.nonmagnetic_expectation);
      doc["nonkramers_offdiagonal"] = opt(rep.nonkramers_offdiagonal);
      doc["basis_orthonormality"] = rep.basis_orthonormality;
      doc["fixed_point"] = rep.fixed_point;
      doc["worst"] = rep.worst();
      emit(out, doc);
    } else {
      out << "parity: " << rep.parity << "  trials: " << rep.trials << '\n';
      out << "norm equality:            " << num(rep.norm_equality) << '\n';
      if (rep.kramers_overlap) {
        out << "Kramers overlap <v|Kv>:   " << num(*rep.kramers_overlap) << '\n';
        out << "Kramers sign flip:        " << num(*rep.kramers_sign_flip) << '\n';
      }
      if (rep.nonmagnetic_expectation) {
        out << "non-magnetic <w|O|w>:     " << num(*rep.nonmagnetic_expectation) << '\n';
      }
      if (rep.nonkramers_offdiagonal) {
        out << "non-Kramers <phi|O|phib>: " << num(*rep.nonkramers_offdiagonal) << '\n';
      }
      out << "basis orthonormality:     " << num(rep.basis_orthonormality) << '\n';
      out << "fixed point:              " << num(rep.fixed_point) << '\n';
    }
    return rep.worst() <= tol ? kOk : kContractViolation;
  }
};

// generate --------------------------------------------------------------------

struct GenerateCmd {
  Common common;
  std::uint64_t seed = 0;
  int two_s = 1;
  int det_sign = 0;
  int singular_rows = 0;
  double sv_min = 0.5;
  double sv_max = 3.0;
  std::string kind = "zeeman_triple";
  bool no_scramble = false;
  std::string output;

  int run(std::ostream &out) const {
    FixtureSpec spec;
    spec.seed = seed;
    spec.s = SpinQuantum(two_s);
    spec.det_sign = det_sign;
    spec.singular_rows = singular_rows;
    spec.sv_range = {sv_min, sv_max};
    const double c = resolve_c(common.c, std::nullopt);
    const GMatrixSmall g = random_g(spec);

    io::MatrixFile f;
    if (kind == "g_tensor") {
      f = io::from_g(g, two_s, c);
    } else if (kind == "zeeman_triple") {
      const SpinMatrices sm = spin_matrices(spec.s);
      ZeemanTriple zt = build_zeeman(g, sm, c);
      if (!no_scramble) {
        zt = scramble(zt, sm, derive_seed(seed, 1)).zt;
      }
      f = io::from_zeeman(zt, c);
    } else {
      throw io::InputError("--kind must be zeeman_triple or g_tensor");
    }
    const std::string text = io::serialize(f);
    if (!output.empty()) {
      write_file(output, text);
      if (common.json) {
        json doc = report_header();
        doc["output"] = output;
        doc["kind"] = kind;
        emit(out, doc);
      } else {
        out << "wrote " << output << '\n';
      }
    } else {
      out << text;
    }
    return kOk;
  }
};

} // namespace

double resolve_c(std::optional<double> flag, std::optional<double> file_c) {
  if (flag) {
    if (!(*flag > 0.0) || !std::isfinite(*flag)) {
      throw io::InputError("--c must be positive and finite");
    }
    return *flag;
  }
  if (file_c) {
    return *file_c;
  }
  if (const char *env = std::getenv("SPINHAM_C"); env != nullptr && *env != '\0') {
    char *end = nullptr;
    const double v = std::strtod(env, &end);
    if (end == env || *end != '\0' || !(v > 0.0) || !std::isfinite(v)) {
      throw io::InputError(std::string("SPINHAM_C is not a positive number: ") + env);
    }
    return v;
  }
  return kSpeedOfLight;
}

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
  CLI::App app{"Effective spin Hamiltonian toolkit: g-tensor extraction and diagonalization", "spinham"};
  app.require_subcommand(1);

  SpinMatricesCmd spin_cmd;
  PrincipalAxesCmd pa_cmd;
  ExtractCmd ex_cmd;
  SplittingsCmd sp_cmd;
  AltDiagCmd alt_cmd;
  CrossValidateCmd cv_cmd;
  VerifyCmd ver_cmd;
  GenerateCmd gen_cmd;
  std::function<int()> action;

  auto *spin = app.add_subcommand("spin-matrices", "Print S_x, S_y, S_z for a multiplicity");
  add_common(spin, spin_cmd.common, 1e-13);
  spin->add_option("--two-s", spin_cmd.two_s, "2S")->required();
  spin->callback([&] { action = [&] { return spin_cmd.run(out); }; });

  auto *pa = app.add_subcommand("principal-axes", "Diagonalize a g-tensor through G = g g^T");
  add_common(pa, pa_cmd.common, Tolerances::principal_residual);
  pa->add_option("--input", pa_cmd.input, "g_tensor file")->required();
  pa->add_flag("--table", pa_cmd.table, "Human-readable table (default)");
  pa->add_option("--zero-row", pa_cmd.zero_row, "Relative threshold for zero G eigenvalues");
  pa->callback([&] { action = [&] { return pa_cmd.run(out); }; });

  auto *ex = app.add_subcommand("extract", "Read g from a Zeeman triple");
  add_common(ex, ex_cmd.common, Tolerances::model_span);
  ex->add_option("--input", ex_cmd.input, "zeeman_triple file")->required();
  ex->add_option("--output", ex_cmd.output, "Write the g_tensor file here");
  ex->add_option("--method", ex_cmd.method, "general or doublet");
  ex->callback([&] { action = [&] { return ex_cmd.run(out, err); }; });

  auto *sp = app.add_subcommand("splittings", "Closed-form Zeeman levels for a field");
  add_common(sp, sp_cmd.common, 1e-12);
  sp->add_option("--input", sp_cmd.input, "g_tensor file")->required();
  sp->add_option("--field", sp_cmd.field, "Bx By Bz in atomic units")->expected(3)->required();
  sp->callback([&] { action = [&] { return sp_cmd.run(out); }; });

  auto *alt = app.add_subcommand("alt-diag", "Diagonalize g through the eigenvectors of H_z");
  add_common(alt, alt_cmd.common, Tolerances::alt_residual);
  alt->add_option("--input", alt_cmd.input, "zeeman_triple file in the G frame")->required();
  alt->callback([&] { action = [&] { return alt_cmd.run(out); }; });

  auto *cv = app.add_subcommand("cross-validate", "Compare both diagonalization procedures");
  add_common(cv, cv_cmd.common, Tolerances::cross_validate);
  cv->add_option("--input", cv_cmd.input, "g_tensor file");
  cv->add_option("--trials", cv_cmd.trials, "Random g-tensors (default 100 without --input)");
  cv->add_option("--seed", cv_cmd.seed, "Seed");
  cv->add_option("--two-s", cv_cmd.two_s, "2S (default from the input file, else 1)");
  cv->callback([&] { action = [&] { return cv_cmd.run(out, err); }; });

  auto *ver = app.add_subcommand("verify", "Check the time-reversal theorems on random states");
  add_common(ver, ver_cmd.common, 1e-10);
  ver->add_option("--two-s", ver_cmd.two_s, "2S")->required();
  ver->add_option("--trials", ver_cmd.trials, "Trials");
  ver->add_option("--seed", ver_cmd.seed, "Seed");
  ver->add_flag("--random-rep", ver_cmd.random_rep, "Use a random equivalent representation of K");
  ver->callback([&] { action = [&] { return ver_cmd.run(out); }; });

  auto *gen = app.add_subcommand("generate", "Write a seeded synthetic fixture");
  add_common(gen, gen_cmd.common, 0.0);
  gen->add_option("--seed", gen_cmd.seed, "Seed")->required();
  gen->add_option("--two-s", gen_cmd.two_s, "2S")->required();
  gen->add_option("--det-sign", gen_cmd.det_sign, "-1, 1, or 0 for unconstrained");
  gen->add_option("--singular-rows", gen_cmd.singular_rows, "Zero singular values (0..2)");
  gen->add_option("--sv-min", gen_cmd.sv_min, "Smallest singular value");
  gen->add_option("--sv-max", gen_cmd.sv_max, "Largest singular value");
  gen->add_option("--kind", gen_cmd.kind, "zeeman_triple or g_tensor");
  gen->add_flag("--no-scramble", gen_cmd.no_scramble, "Skip the random real and spin rotations");
  gen->add_option("--output", gen_cmd.output, "Output path (default stdout)");
  gen->callback([&] { action = [&] { return gen_cmd.run(out); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success &e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError &e) {
    err << "spinham: " << e.what() << '\n';
    return kInputError;
  }

  try {
    return action();
  } catch (const ModelViolation &e) {
    err << "spinham: model violation: " << e.what() << '\n';
    return kModelViolation;
  } catch (const InconsistencyError &e) {
    err << "spinham: " << e.what() << '\n';
    return kContractViolation;
  } catch (const NumericalError &e) {
    err << "spinham: " << e.what() << '\n';
    return kContractViolation;
  } catch (const Error &e) {
    err << "spinham: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception &e) {
    err << "spinham: " << e.what() << '\n';
    return kInputError;
  }
}

} // namespace spinham::cli
