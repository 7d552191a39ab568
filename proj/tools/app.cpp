#include "app.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <array>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <memory>
#include <optional>
#include <sstream>

#include "hk/oracle.hpp"
#include "hk/transverse.hpp"

namespace hk::app {

namespace {

using json = nlohmann::ordered_json;

// Shared pipeline, built on first use.
struct Context {
    std::unique_ptr<DeWittTable> table;
    std::unique_ptr<HFunctions> h;
    std::unique_ptr<OpAlgebra> algebra;
    std::unique_ptr<BasisReducer> reducer;
    std::unique_ptr<TransverseEngine> engine;

    const DeWittTable& dewitt() {
        if (!table) table = std::make_unique<DeWittTable>(3);
        return *table;
    }
    const HFunctions& hfun() {
        if (!h) h = std::make_unique<HFunctions>(dewitt());
        return *h;
    }
    BasisReducer& basis() {
        if (!reducer) reducer = std::make_unique<BasisReducer>();
        return *reducer;
    }
    TransverseEngine& transverse() {
        if (!engine) {
            algebra = std::make_unique<OpAlgebra>(hfun());
            engine = std::make_unique<TransverseEngine>(*algebra, basis());
        }
        return *engine;
    }
};

Context& context() {
    static Context c;
    return c;
}

// ---------------------------------------------------------------------------
// Number rendering

std::string rational_str(const Rational& r) { return std::to_string(r.num()) + "/" + std::to_string(r.den()); }

json int_list(const std::vector<Rational>& c) {
    json a = json::array();
    for (const Rational& r : c) {
        if (!r.is_integer()) throw std::logic_error("non-integer coefficient in integer form");
        a.push_back(r.num());
    }
    return a;
}

json to_json(const DimRational& v) {
    std::vector<Rational> n, d;
    v.integer_form(n, d);
    return json{{"num", int_list(n)}, {"den", int_list(d)}, {"value", v.str()}};
}

json to_json(const Rational& r) {
    return json{{"num", json::array({r.num()})}, {"den", json::array({r.den()})}, {"value", rational_str(r)}};
}

std::string latex_poly(const std::vector<Rational>& c) {
    std::string s;
    for (int k = static_cast<int>(c.size()) - 1; k >= 0; --k) {
        const std::int64_t v = c[k].num();
        if (v == 0) continue;
        if (!s.empty()) s += v < 0 ? " - " : " + ";
        else if (v < 0) s += "-";
        const std::int64_t a = v < 0 ? -v : v;
        if (a != 1 || k == 0) s += std::to_string(a);
        if (k > 0) s += (a != 1 ? " " : "") + std::string("d") + (k > 1 ? "^{" + std::to_string(k) + "}" : "");
    }
    return s.empty() ? "0" : s;
}

std::string latex(const DimRational& v) {
    std::vector<Rational> n, d;
    v.integer_form(n, d);
    if (d.size() == 1 && d[0].num() == 1) return latex_poly(n);
    std::string num = latex_poly(n);
    std::string sign;
    if (n.size() == 1 && n[0].num() < 0) {
        sign = "-";
        num = num.substr(1);
    }
    return sign + "\\frac{" + num + "}{" + latex_poly(d) + "}";
}

std::string latex(const Rational& r) { return latex(DimRational(r)); }

// "R3_5" -> "c_{3,5}".
std::string latex_name(const std::string& id) {
    std::string digits = id.substr(1);
    std::replace(digits.begin(), digits.end(), '_', ',');
    return "c_{" + digits + "}";
}

std::string basis_name(BasisKind k) {
    switch (k) {
        case BasisKind::General: return "general";
        case BasisKind::Einstein: return "einstein";
        case BasisKind::Sphere: return "sphere";
    }
    return "";
}

// ---------------------------------------------------------------------------
// Tables

enum class Format { Json, Latex, Text };

Format parse_format(const std::string& f) {
    if (f == "json") return Format::Json;
    if (f == "latex") return Format::Latex;
    if (f == "text") return Format::Text;
    throw ValidationError("unknown format '" + f + "'");
}

// One row of an output table: exact value plus an optional log part.
struct Row {
    std::string id;
    std::optional<DimRational> value;
    std::optional<Rational> number;
    std::optional<Rational> log_part;
    std::string label;  // overrides the coefficient name
};

std::string row_name(const Row& r) { return r.label.empty() ? coeff_name(r.id) : r.label; }

struct Document {
    json header;  // leading JSON fields
    std::vector<Row> rows;
};

Document table_document(json header, const CoeffTable& t, bool nonzero_only = false) {
    header["basis"] = basis_name(t.kind());
    Document doc{std::move(header), {}};
    for (auto& [id, v] : t.entries()) {
        if (nonzero_only && v.is_zero()) continue;
        doc.rows.push_back(Row{id, v, std::nullopt, std::nullopt, {}});
    }
    return doc;
}

std::string header_text(const json& h) {
    std::string s = "#";
    for (auto& [k, v] : h.items()) s += " " + k + "=" + (v.is_string() ? v.get<std::string>() : v.dump());
    return s + "\n";
}

std::string render(const Document& doc, Format f) {
    std::ostringstream os;
    switch (f) {
        case Format::Json: {
            json j = doc.header;
            json entries = json::object();
            for (const Row& r : doc.rows) {
                json e = r.value ? to_json(*r.value) : to_json(*r.number);
                if (r.log_part) e["log_part"] = to_json(*r.log_part);
                entries[row_name(r)] = e;
            }
            j["entries"] = entries;
            os << j.dump(2) << "\n";
            break;
        }
        case Format::Latex: {
            os << "% " << header_text(doc.header).substr(2);
            os << "\\begin{tabular}{ll}\n";
            for (const Row& r : doc.rows) {
                std::string v = r.value ? latex(*r.value) : latex(*r.number);
                if (r.log_part && !r.log_part->is_zero()) {
                    std::string l = latex(*r.log_part);
                    if (l.front() == '-') v += " - " + l.substr(1);
                    else v += " + " + l;
                    v += " \\log(s/s_0)";
                }
                os << (r.label.empty() ? latex_name(r.id) : "\\text{" + r.label + "}") << " & $" << v << "$ \\\\\n";
            }
            os << "\\end{tabular}\n";
            break;
        }
        case Format::Text: {
            os << header_text(doc.header);
            for (const Row& r : doc.rows) {
                os << row_name(r) << " = " << (r.value ? r.value->str() : rational_str(*r.number));
                if (r.log_part) os << "  log: " << rational_str(*r.log_part);
                os << "\n";
            }
            break;
        }
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Commands

enum class BundleArg { Scalar, Vector, Tensor, Transverse };

BundleArg parse_bundle(const std::string& b) {
    if (b == "scalar") return BundleArg::Scalar;
    if (b == "vector") return BundleArg::Vector;
    if (b == "tensor") return BundleArg::Tensor;
    if (b == "transverse") return BundleArg::Transverse;
    throw ValidationError("unknown bundle '" + b + "'");
}

struct CoeffsArgs {
    std::string bundle = "scalar";
    bool einstein = false;
    std::optional<std::string> sphere;  // "d" or an integer dimension
    bool primed = false;
    bool d4 = false;
};

// Parsed and checked form of CoeffsArgs.
struct CoeffsPlan {
    BundleArg bundle;
    enum { General, Einstein, Sphere, SphereAt, D4 } variant = General;
    int dim = 0;
    bool primed = false;
};

CoeffsPlan validate(const CoeffsArgs& a) {
    CoeffsPlan p;
    p.bundle = parse_bundle(a.bundle);
    if (int(a.einstein) + int(a.sphere.has_value()) + int(a.d4) > 1)
        throw ValidationError("--einstein, --sphere and --d4 are mutually exclusive");
    if (a.einstein) p.variant = CoeffsPlan::Einstein;
    if (a.d4) {
        if (p.bundle != BundleArg::Transverse) throw ValidationError("--d4 applies to the transverse bundle only");
        p.variant = CoeffsPlan::D4;
    }
    if (a.sphere) {
        if (*a.sphere == "d") {
            p.variant = CoeffsPlan::Sphere;
        } else {
            try {
                std::size_t used = 0;
                p.dim = std::stoi(*a.sphere, &used);
                if (used != a.sphere->size()) throw std::invalid_argument("trailing characters");
            } catch (const std::exception&) {
                throw ValidationError("--sphere takes 'd' or an integer dimension, got '" + *a.sphere + "'");
            }
            if (p.dim < 2) throw ValidationError("--sphere dimension must be at least 2");
            p.variant = CoeffsPlan::SphereAt;
        }
    }
    if (a.primed) {
        if (p.bundle != BundleArg::Transverse) throw ValidationError("--primed applies to the transverse bundle only");
        if (p.variant != CoeffsPlan::SphereAt || p.dim != 4)
            throw ValidationError("--primed is defined for --sphere 4 only");
        p.primed = true;
    }
    return p;
}

CoeffTable general_table(BundleArg b) {
    Context& c = context();
    switch (b) {
        case BundleArg::Scalar: return bundle_heat_coefficients(c.hfun(), Bundle::Scalar, c.basis());
        case BundleArg::Vector: return bundle_heat_coefficients(c.hfun(), Bundle::Vector, c.basis());
        case BundleArg::Tensor: return bundle_heat_coefficients(c.hfun(), Bundle::SymTensor, c.basis());
        case BundleArg::Transverse: return c.transverse().general();
    }
    throw std::logic_error("bundle");
}

CoeffTable einstein_table(BundleArg b) {
    if (b == BundleArg::Transverse) return context().transverse().einstein();
    return specialize_einstein(general_table(b));
}

Document coeffs_document(const CoeffsArgs& args) {
    const CoeffsPlan p = validate(args);
    json h{{"bundle", args.bundle}};
    switch (p.variant) {
        case CoeffsPlan::General: return table_document(h, general_table(p.bundle));
        case CoeffsPlan::Einstein: return table_document(h, einstein_table(p.bundle));
        case CoeffsPlan::Sphere: return table_document(h, specialize_sphere(einstein_table(p.bundle)));
        case CoeffsPlan::SphereAt: {
            h["d"] = p.dim;
            h["primed"] = p.primed;
            h["basis"] = basis_name(BasisKind::Sphere);
            Document doc{h, {}};
            std::array<Rational, 4> v;
            if (p.bundle == BundleArg::Transverse && p.dim == 4) {
                v = context().transverse().sphere_d4(p.primed);
            } else {
                const CoeffTable s = specialize_sphere(einstein_table(p.bundle));
                for (int k = 0; k < 4; ++k) v[k] = s.get(sphere_basis()[k].id).eval(Rational(p.dim));
            }
            for (int k = 0; k < 4; ++k) doc.rows.push_back(Row{sphere_basis()[k].id, std::nullopt, v[k], std::nullopt, {}});
            return doc;
        }
        case CoeffsPlan::D4: {
            const CoeffTable g = context().transverse().general();
            const auto reg = d4_regularize(g);
            h["d"] = 4;
            h["basis"] = basis_name(BasisKind::General);
            Document doc{h, {}};
            for (auto& [id, v] : g.entries()) {
                (void)v;
                const Regularized& r = reg.at(id);
                doc.rows.push_back(Row{id, std::nullopt, r.finite, r.log, {}});
            }
            return doc;
        }
    }
    throw std::logic_error("variant");
}

struct OffdiagArgs {
    int n = 0;
    int derivs = 0;
    bool ordered = false;
    bool sigma = false;
};

Polynomial offdiag_entry(const OffdiagArgs& a) {
    if (a.derivs < 0) throw ValidationError("--derivs must be non-negative");
    if (a.sigma) {
        if (a.derivs > 8) throw ValidationError("world function entries are tabulated up to 8 derivatives");
        static const SigmaTable sigma(8);
        return a.ordered ? sigma.entry(a.derivs) : sigma.symmetrized(a.derivs);
    }
    if (a.n < 0) throw ValidationError("--n must be non-negative");
    if (2 * a.n + a.derivs > 6) throw ValidationError("entries are tabulated for n + derivs/2 <= 3");
    const DeWittTable& t = context().dewitt();
    return a.ordered ? t.entry(a.n, a.derivs) : t.symmetrized(a.n, a.derivs);
}

std::string polynomial_document(const json& header, const Polynomial& p, Format f) {
    if (f == Format::Latex) throw ValidationError("LaTeX output is available for coefficient tables only");
    if (f == Format::Text) return p.str() + "\n";
    json j = header;
    json terms = json::array();
    for (const auto& [m, c] : p) terms.push_back(json{{"coeff", to_json(DimRational(c))}, {"monomial", monomial_str(m)}});
    j["terms"] = terms;
    return j.dump(2) + "\n";
}

std::string offdiag_text(const OffdiagArgs& a, Format f) {
    const Polynomial p = offdiag_entry(a);
    json h = a.sigma ? json{{"sigma", true}} : json{{"n", a.n}};
    h["derivs"] = a.derivs;
    h["ordered"] = a.ordered;
    return polynomial_document(h, p, f);
}

Document partials_document(int n, bool subtraces) {
    if (n < 0 || n > 4) throw ValidationError("--n must be in 0..4");
    TransverseEngine& e = context().transverse();
    if (!subtraces) {
        const HeatSeries s = e.partial(n);
        return table_document(json{{"bundle", "transverse"}, {"partial", n}, {"s_offset", s.offset}}, s.c);
    }
    // Subtraces flattened into one table with prefixed ids.
    Document doc{json{{"bundle", "transverse"}, {"partial", n}, {"subtraces", true}, {"basis", "general"}}, {}};
    for (const Subtrace& st : e.subtraces(n))
        for (auto& [id, v] : st.value.c.entries())
            doc.rows.push_back(Row{id, v, std::nullopt, std::nullopt, st.name + ":" + coeff_name(id)});
    return doc;
}

std::string reduce_text(const std::string& expr, bool integrated, Format f) {
    Polynomial p;
    try {
        p = Polynomial::parse(expr);
    } catch (const std::exception& e) {
        throw ValidationError(std::string("cannot parse expression: ") + e.what());
    }
    CoeffTable t;
    try {
        t = context().basis().reduce(p, integrated);
    } catch (const std::domain_error& e) {
        throw ValidationError(e.what());
    }
    return render(table_document(json{{"expr", expr}, {"integrated", integrated}}, t, true), f);
}

// ---------------------------------------------------------------------------
// Numeric verification on spheres

struct VerifyArgs {
    int d = 3;
    std::string field = "transverse";
    bool primed = false;
    std::optional<double> s_min, s_max;
    int points = 40;
    int extra = 5;
};

std::string verify_text(const VerifyArgs& a, Format f, bool& passed) {
    if (a.field != "scalar" && a.field != "transverse") throw ValidationError("--field must be scalar or transverse");
    const bool transverse = a.field == "transverse";
    if (a.d < 2) throw ValidationError("--sphere-d must be at least 2");
    if (a.primed && (!transverse || a.d != 4)) throw ValidationError("the primed comparison is defined for transverse vectors on S^4 only");
    if (a.points < 2) throw ValidationError("--points must be at least 2");
    if (a.extra < 0) throw ValidationError("--extra must be non-negative");
    const SpectrumModel m{a.d, transverse ? FieldType::Transverse : FieldType::Scalar, 1.0L, a.primed};
    const long double r = m.scalar_curvature();
    const long double lo = a.s_min ? *a.s_min : 0.01L / r;
    const long double hi = a.s_max ? *a.s_max : 1.0L / r;
    if (!(lo > 0) || !(hi > lo)) throw ValidationError("need 0 < s-min < s-max");
    if (a.points < a.extra + 3 + 3) throw ValidationError("too few points for the fit degree");
    if (f == Format::Latex) throw ValidationError("verify emits json or text");

    std::array<Rational, 4> exact;
    if (transverse && a.d == 4) {
        exact = context().transverse().sphere_d4(a.primed);
    } else {
        const CoeffTable s = specialize_sphere(einstein_table(transverse ? BundleArg::Transverse : BundleArg::Scalar));
        for (int k = 0; k < 4; ++k) exact[k] = s.get(sphere_basis()[k].id).eval(Rational(a.d));
    }

    const FitResult fit = fit_early_time(m, log_grid(lo, hi, a.points), 3, a.extra);
    const std::array<double, 4> tolerance{1e-3, 1e-3, 5e-2, 5e-2};
    passed = true;
    json rows = json::array();
    std::ostringstream txt;
    txt << "# sphere d=" << a.d << " field=" << a.field << (a.primed ? " primed" : "") << " s in [" << static_cast<double>(lo) << ", "
        << static_cast<double>(hi) << "] points=" << a.points << " degree=" << fit.degree << " condition=" << static_cast<double>(fit.condition)
        << " rms=" << static_cast<double>(fit.rms_residual) << "\n";
    txt << "k  fitted  jackknife  refinement  exact  abs_dev  rel_dev  ok\n";
    for (int k = 0; k < 4; ++k) {
        const double fitted = static_cast<double>(fit.c[k]);
        const double ex = exact[k].to_double();
        const double abs_dev = std::fabs(fitted - ex);
        const double rel_dev = ex != 0 ? abs_dev / std::fabs(ex) : abs_dev;
        const bool ok = rel_dev < tolerance[k];
        passed = passed && ok;
        rows.push_back(json{{"k", k},
                            {"fitted", fitted},
                            {"jackknife_error", static_cast<double>(fit.error[k])},
                            {"refinement", static_cast<double>(fit.refinement[k])},
                            {"exact", rational_str(exact[k])},
                            {"abs_dev", abs_dev},
                            {"rel_dev", rel_dev},
                            {"tolerance", tolerance[k]},
                            {"ok", ok}});
        char line[256];
        std::snprintf(line, sizeof line, "c%d  %.12g  %.2e  %.2e  %s  %.2e  %.2e  %s\n", k, fitted, static_cast<double>(fit.error[k]),
                      static_cast<double>(fit.refinement[k]), rational_str(exact[k]).c_str(), abs_dev, rel_dev, ok ? "yes" : "no");
        txt << line;
    }
    if (f == Format::Text) return txt.str();
    json j{{"sphere_d", a.d},
           {"field", a.field},
           {"primed", a.primed},
           {"s_min", static_cast<double>(lo)},
           {"s_max", static_cast<double>(hi)},
           {"points", a.points},
           {"degree", fit.degree},
           {"condition", static_cast<double>(fit.condition)},
           {"rms_residual", static_cast<double>(fit.rms_residual)},
           {"coefficients", rows},
           {"pass", passed}};
    return j.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// Golden files and self-check

std::string sigma_golden() {
    std::string s;
    for (int n = 2; n <= 8; ++n) {
        OffdiagArgs a;
        a.sigma = true;
        a.ordered = true;
        a.derivs = n;
        s += "[sigma " + std::to_string(n) + "]\n" + offdiag_text(a, Format::Text);
    }
    return s;
}

std::string coeffs_golden(const std::string& bundle, bool einstein = false, std::optional<std::string> sphere = {}, bool primed = false,
                          bool d4 = false) {
    CoeffsArgs a;
    a.bundle = bundle;
    a.einstein = einstein;
    a.sphere = std::move(sphere);
    a.primed = primed;
    a.d4 = d4;
    return render(coeffs_document(a), Format::Json);
}

// Cross-checks between independent computational paths.
std::vector<std::string> consistency_failures() {
    std::vector<std::string> bad;
    TransverseEngine& e = context().transverse();
    if (!(e.einstein() == e.einstein_direct())) bad.push_back("Einstein table: substitution and direct paths differ");
    if (!(e.partial(0).c == e.partial0_via_t().c)) bad.push_back("S^(0): projector and T^(n) paths differ");
    const CoeffTable s = e.sphere();
    const auto d4 = e.sphere_d4(false);
    for (int k = 0; k < 4; ++k)
        if (!(s.get(sphere_basis()[k].id).eval(Rational(4)) == d4[k])) bad.push_back("sphere table at d = 4 disagrees with the d = 4 values");
    return bad;
}

void write_output(const std::string& text, const std::string& path, std::ostream& out) {
    if (path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ValidationError("cannot open '" + path + "' for writing");
    f << text;
}

std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int all_tables(const std::string& dir, bool self_check, std::ostream& out, std::ostream& err) {
    namespace fs = std::filesystem;
    const auto files = golden_files();
    if (!self_check) {
        fs::create_directories(dir);
        for (auto& [name, text] : files) {
            std::ofstream f(fs::path(dir) / name, std::ios::binary);
            if (!f) throw ValidationError("cannot write into '" + dir + "'");
            f << text;
            out << "wrote " << (fs::path(dir) / name).string() << "\n";
        }
        return kOk;
    }
    if (!fs::is_directory(dir)) throw ValidationError("golden directory '" + dir + "' not found");
    int failures = 0;
    for (auto& [name, text] : files) {
        const fs::path p = fs::path(dir) / name;
        if (!fs::exists(p)) {
            err << "missing  " << name << "\n";
            ++failures;
        } else if (read_file(p) != text) {
            err << "mismatch " << name << "\n";
            ++failures;
        } else {
            out << "ok       " << name << "\n";
        }
    }
    std::vector<std::string> extra;
    for (const auto& entry : fs::directory_iterator(dir))
        if (entry.is_regular_file() && !files.count(entry.path().filename().string())) extra.push_back(entry.path().filename().string());
    std::sort(extra.begin(), extra.end());
    for (const std::string& name : extra) {
        err << "unknown  " << name << " (not produced by any command)\n";
        ++failures;
    }
    for (const std::string& msg : consistency_failures()) {
        err << "inconsistent: " << msg << "\n";
        ++failures;
    }
    out << (failures == 0 ? "self-check passed" : "self-check FAILED") << " (" << files.size() << " golden files)\n";
    return failures == 0 ? kOk : kInconsistent;
}

}  // namespace

std::map<std::string, std::string> golden_files() {
    std::map<std::string, std::string> g;
    g["sigma_table.txt"] = sigma_golden();
    const std::vector<std::tuple<std::string, int, int>> cells{{"A1.txt", 1, 0},    {"A2.txt", 2, 0},    {"A3.txt", 3, 0},   {"dA0_5.txt", 0, 5},
                                                               {"dA0_6.txt", 0, 6}, {"dA1_3.txt", 1, 3}, {"dA2_1.txt", 2, 1}};
    for (auto& [name, n, m] : cells) {
        OffdiagArgs a;
        a.n = n;
        a.derivs = m;
        g[name] = offdiag_text(a, Format::Text);
    }
    for (const char* b : {"scalar", "vector", "tensor", "transverse"}) g[std::string("coeffs_") + b + ".json"] = coeffs_golden(b);
    g["transverse_einstein.json"] = coeffs_golden("transverse", true);
    g["transverse_sphere.json"] = coeffs_golden("transverse", false, "d");
    g["transverse_sphere4.json"] = coeffs_golden("transverse", false, "4");
    g["transverse_sphere4_primed.json"] = coeffs_golden("transverse", false, "4", true);
    g["transverse_d4.json"] = coeffs_golden("transverse", false, {}, false, true);
    for (int n = 0; n <= 4; ++n) g["partials_" + std::to_string(n) + ".json"] = render(partials_document(n, false), Format::Json);
    return g;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Heat kernel coefficient tables and checks", "hk"};
    app.require_subcommand(1);

    std::string format = "text";
    std::string output_path;
    auto common = [&](CLI::App* sub) {
        sub->add_option("--format", format, "json, latex or text")->check(CLI::IsMember({"json", "latex", "text"}));
        sub->add_option("--output-path", output_path, "write to this file instead of stdout");
    };

    CoeffsArgs coeffs;
    auto* c_coeffs = app.add_subcommand("coeffs", "traced heat kernel coefficients of a bundle");
    c_coeffs->add_option("--bundle", coeffs.bundle, "scalar, vector, tensor or transverse")->required();
    c_coeffs->add_flag("--einstein", coeffs.einstein, "restrict to Einstein spaces");
    c_coeffs->add_option("--sphere", coeffs.sphere, "restrict to spheres: 'd' for general dimension or an integer");
    c_coeffs->add_flag("--primed", coeffs.primed, "drop the constant scalar mode (transverse, --sphere 4)");
    c_coeffs->add_flag("--d4", coeffs.d4, "finite and log parts at d = 4 (transverse)");

    OffdiagArgs offdiag;
    auto* c_offdiag = app.add_subcommand("offdiag", "coincidence limit of derivatives of A_n");
    c_offdiag->add_option("--n", offdiag.n, "coefficient index");
    c_offdiag->add_option("--derivs", offdiag.derivs, "number of derivatives")->required();
    c_offdiag->add_flag("--ordered", offdiag.ordered, "identity index order instead of contraction with u");
    c_offdiag->add_flag("--sigma", offdiag.sigma, "world function instead of A_n");

    std::string expr;
    bool integrated = false;
    auto* c_reduce = app.add_subcommand("reduce", "express a curvature scalar in the basis");
    c_reduce->add_option("--expr", expr, "polynomial, one term per line or separated by newlines")->required();
    c_reduce->add_flag("--integrated", integrated, "allow integration by parts");

    int partial_n = 0;
    bool subtraces = false;
    auto* c_partials = app.add_subcommand("partials", "partial traces S^(n) of the transverse expansion");
    c_partials->add_option("--n", partial_n, "order 0..4")->required();
    c_partials->add_flag("--subtraces", subtraces, "list the individual subtraces");

    VerifyArgs verify;
    auto* c_verify = app.add_subcommand("verify", "fit the early-time expansion of an exact sphere spectrum");
    c_verify->add_option("--sphere-d", verify.d, "sphere dimension")->required();
    c_verify->add_option("--field", verify.field, "scalar or transverse");
    c_verify->add_flag("--primed", verify.primed, "keep the constant scalar mode out (S^4 only)");
    c_verify->add_option("--s-min", verify.s_min, "smallest s (unit radius)");
    c_verify->add_option("--s-max", verify.s_max, "largest s (unit radius)");
    c_verify->add_option("--points", verify.points, "grid points");
    c_verify->add_option("--extra", verify.extra, "fit degree beyond the reported order");

    bool einstein_direct = false;
    auto* c_einstein = app.add_subcommand("einstein", "transverse coefficients on Einstein spaces");
    c_einstein->add_flag("--direct", einstein_direct, "use the commuting-projector path");

    std::string sphere_d = "d";
    bool sphere_primed = false;
    auto* c_sphere = app.add_subcommand("sphere", "transverse coefficients on spheres");
    c_sphere->add_option("--d", sphere_d, "'d' or an integer dimension");
    c_sphere->add_flag("--primed", sphere_primed, "drop the constant scalar mode (d = 4)");

    std::string golden_dir = "golden";
    bool self_check = false;
    auto* c_all = app.add_subcommand("all-tables", "write every golden file, or compare with --self-check");
    c_all->add_option("--golden-dir", golden_dir, "golden file directory");
    c_all->add_flag("--self-check", self_check, "compare instead of writing; exit 2 on mismatch");

    for (CLI::App* sub : {c_coeffs, c_offdiag, c_reduce, c_partials, c_verify, c_einstein, c_sphere}) common(sub);

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kInvalid;
    }

    try {
        const Format f = parse_format(format);
        std::string text;
        if (c_coeffs->parsed()) {
            text = render(coeffs_document(coeffs), f);
        } else if (c_offdiag->parsed()) {
            text = offdiag_text(offdiag, f);
        } else if (c_reduce->parsed()) {
            text = reduce_text(expr, integrated, f);
        } else if (c_partials->parsed()) {
            text = render(partials_document(partial_n, subtraces), f);
        } else if (c_verify->parsed()) {
            bool passed = false;
            text = verify_text(verify, f, passed);
            write_output(text, output_path, out);
            return passed ? kOk : kInconsistent;
        } else if (c_einstein->parsed()) {
            if (einstein_direct) {
                text = render(table_document(json{{"bundle", "transverse"}, {"path", "direct"}}, context().transverse().einstein_direct()), f);
            } else {
                CoeffsArgs a;
                a.bundle = "transverse";
                a.einstein = true;
                text = render(coeffs_document(a), f);
            }
        } else if (c_sphere->parsed()) {
            CoeffsArgs a;
            a.bundle = "transverse";
            a.sphere = sphere_d;
            a.primed = sphere_primed;
            text = render(coeffs_document(a), f);
        } else if (c_all->parsed()) {
            return all_tables(golden_dir, self_check, out, err);
        }
        write_output(text, output_path, out);
        return kOk;
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << "\n";
        return kInvalid;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return kInconsistent;
    }
}

}  // namespace hk::app
