// Command-line front end. Every library operation is reachable through one
// of the subcommands {sum, zeta, spectrum, count, moments, revert, heat, cc};
// output is deterministic for a fixed invocation (JSON by default, CSV and
// aligned tables on request, eigenvalue<TAB>multiplicity for spectra).
//
// Exit codes: 0 success, 1 runtime failure, 2 usage error, 3 numeric
// non-convergence.

#include "specsum/counting.hpp"
#include "specsum/finite_part.hpp"
#include "specsum/heat.hpp"
#include "specsum/reversion.hpp"
#include "specsum/spectra.hpp"
#include "specsum/summability.hpp"
#include "specsum/zeta.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

namespace {

using json = nlohmann::ordered_json;
using namespace specsum;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string fmt15(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

std::string rational_str(const Rational& q) {
    std::ostringstream os;
    os << q;
    return os.str();
}

Rational parse_rational(const std::string& s) {
    try {
        return Rational(s);
    } catch (const std::exception&) {
        throw UsageError("not a rational number: '" + s + "' (want p or p/q)");
    }
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(item);
    return out;
}

std::vector<Rational> parse_rational_list(const std::string& s) {
    std::vector<Rational> out;
    for (const auto& item : split_list(s)) out.push_back(parse_rational(item));
    return out;
}

std::vector<double> parse_double_list(const std::string& s) {
    std::vector<double> out;
    for (const auto& item : split_list(s)) {
        try {
            std::size_t pos = 0;
            out.push_back(std::stod(item, &pos));
            if (pos != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw UsageError("not a number: '" + item + "'");
        }
    }
    return out;
}

std::string csv_escape(const std::string& cell) {
    if (cell.find_first_of(",\"\n") == std::string::npos) return cell;
    std::string out = "\"";
    for (char ch : cell) {
        if (ch == '"') out += '"';
        out += ch;
    }
    out += '"';
    return out;
}

// Flat record emitted in the requested format. Values are JSON scalars;
// CSV prints a header line plus one data row, table prints aligned
// key/value pairs.
void emit_record(const json& rec, const std::string& format) {
    if (format == "json") {
        std::cout << rec.dump(2) << "\n";
        return;
    }
    auto cell = [](const json& v) -> std::string {
        if (v.is_number_float()) return fmt15(v.get<double>());
        if (v.is_string()) return v.get<std::string>();
        return v.dump();
    };
    if (format == "csv") {
        std::string head, row;
        for (auto it = rec.begin(); it != rec.end(); ++it) {
            if (!head.empty()) {
                head += ',';
                row += ',';
            }
            head += csv_escape(it.key());
            row += csv_escape(cell(it.value()));
        }
        std::cout << head << "\n" << row << "\n";
        return;
    }
    if (format == "table") {
        std::size_t w = 0;
        for (auto it = rec.begin(); it != rec.end(); ++it) w = std::max(w, it.key().size());
        for (auto it = rec.begin(); it != rec.end(); ++it)
            std::cout << it.key() << std::string(w - it.key().size() + 2, ' ')
                      << cell(it.value()) << "\n";
        return;
    }
    throw UsageError("format '" + format + "' is not valid here");
}

// Rows with a fixed header, e.g. spectra and moment listings.
void emit_rows(const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows, const std::string& format,
               const char* json_key) {
    if (format == "json") {
        json arr = json::array();
        for (const auto& r : rows) {
            json obj;
            for (std::size_t i = 0; i < header.size(); ++i) obj[header[i]] = r[i];
            arr.push_back(obj);
        }
        json rec;
        rec[json_key] = arr;
        std::cout << rec.dump(2) << "\n";
        return;
    }
    if (format == "csv") {
        auto join = [](const std::vector<std::string>& v) {
            std::string s;
            for (const auto& x : v) {
                if (!s.empty()) s += ',';
                s += csv_escape(x);
            }
            return s;
        };
        std::cout << join(header) << "\n";
        for (const auto& r : rows) std::cout << join(r) << "\n";
        return;
    }
    if (format == "table") {
        std::vector<std::size_t> w(header.size());
        for (std::size_t i = 0; i < header.size(); ++i) w[i] = header[i].size();
        for (const auto& r : rows)
            for (std::size_t i = 0; i < r.size(); ++i) w[i] = std::max(w[i], r[i].size());
        auto line = [&](const std::vector<std::string>& v) {
            for (std::size_t i = 0; i < v.size(); ++i) {
                std::cout << v[i];
                if (i + 1 < v.size()) std::cout << std::string(w[i] - v[i].size() + 2, ' ');
            }
            std::cout << "\n";
        };
        line(header);
        for (const auto& r : rows) line(r);
        return;
    }
    throw UsageError("format '" + format + "' is not valid here");
}

// Model naming: fused names (torus2, sphere3, oscillator) or a base name
// plus --dim. Horizon parameters fall back to sensible enumeration sizes.
Spectrum build_spectrum(std::string model, int dim, long long max_q, long long l_max,
                        double shift) {
    if (model.size() > 1 && std::isdigit(static_cast<unsigned char>(model.back()))) {
        dim = model.back() - '0';
        model.pop_back();
    }
    if (model == "torus") {
        if (dim < 1) throw UsageError("torus model needs --dim (or a fused name like torus2)");
        return torus_spectrum(dim, max_q < 0 ? 100 : max_q);
    }
    if (model == "sphere") {
        if (dim < 2) throw UsageError("sphere model needs --dim >= 2");
        return sphere_spectrum(dim, l_max < 0 ? 100 : l_max, shift);
    }
    if (model == "oscillator") return oscillator_spectrum(l_max < 0 ? 100 : l_max);
    throw UsageError("unknown model '" + model + "' (want torus, sphere, oscillator)");
}

Spectrum spectrum_for_heat(std::string model, int dim, long long max_q, long long l_max,
                           double shift, double t) {
    if (model.size() > 1 && std::isdigit(static_cast<unsigned char>(model.back()))) {
        dim = model.back() - '0';
        model.pop_back();
    }
    if (model == "sphere" && l_max < 0)
        l_max = static_cast<long long>(std::ceil(std::sqrt(60.0 / t))) + 10;
    if (model == "torus" && max_q < 0) max_q = static_cast<long long>(std::ceil(50.0 / t)) + 100;
    if (model == "oscillator" && l_max < 0) l_max = static_cast<long long>(std::ceil(50.0 / t)) + 10;
    return build_spectrum(model + (dim > 0 ? std::to_string(dim) : ""), dim, max_q, l_max, shift);
}

TestFunctional functional_by_name(const std::string& name) {
    if (name == "exp") return TestFunctional::exponential();
    if (name == "gauss") return TestFunctional::gaussian();
    if (name == "zero") return TestFunctional::zero();
    throw UsageError("unknown test functional '" + name + "' (want exp, gauss, zero)");
}

WeightedComb series_by_name(const std::string& name) {
    if (name == "grandi")
        return WeightedComb::on_integers([](long long n) { return n % 2 == 1 ? 1.0 : -1.0; });
    if (name == "cos")
        return WeightedComb::on_integers([](long long n) { return std::cos(static_cast<double>(n)); });
    if (name == "ones") return WeightedComb::on_integers([](long long) { return 1.0; });
    throw UsageError("unknown series '" + name + "' (want grandi, cos, ones)");
}

json ladder_json(const LadderEstimate& lad) {
    json rec;
    rec["cutoffs"] = lad.cutoffs;
    rec["estimates"] = lad.estimates;
    rec["value"] = lad.value;
    rec["spread"] = lad.spread;
    rec["converged"] = lad.converged;
    return rec;
}

// Flat summary keys in every format; the per-cutoff detail only nests
// cleanly in JSON.
void add_ladder(json& rec, const LadderEstimate& lad, const std::string& format) {
    rec["value"] = lad.value;
    rec["spread"] = lad.spread;
    rec["converged"] = lad.converged;
    if (format == "json") rec["ladder"] = ladder_json(lad);
}

int report_nonconvergence(const LadderEstimate& lad, const std::string& what) {
    std::cerr << what << ": ladder did not stabilize (spread " << fmt15(lad.spread)
              << "); estimates:";
    for (double e : lad.estimates) std::cerr << " " << fmt15(e);
    std::cerr << "\n";
    return 3;
}

// ---------------------------------------------------------------- sum

int run_sum(const std::string& format, const std::string& series, const std::string& weights,
            const std::string& mean, int order, double cutoff, double tol, int fp_set,
            double fp_alpha, double fp_upper, int pf_j, const std::string& g_name,
            int defect_set, int defect_j, double defect_sigma) {
    if (fp_set) {
        FinitePartValue v = hadamard_fp_power(fp_alpha, fp_upper);
        json rec;
        rec["alpha"] = fp_alpha;
        rec["upper"] = fp_upper;
        rec["value"] = v.value;
        rec["dropped_log_coefficient"] = v.dropped_log_coefficient;
        emit_record(rec, format);
        return 0;
    }
    if (pf_j > 0) {
        json rec;
        rec["j"] = pf_j;
        rec["g"] = g_name;
        rec["value"] = pseudofunction_eval(pf_j, functional_by_name(g_name));
        emit_record(rec, format);
        return 0;
    }
    if (defect_set) {
        json rec;
        rec["j"] = defect_j;
        rec["sigma"] = defect_sigma;
        rec["value"] = pf_scaling_defect(defect_j, defect_sigma);
        emit_record(rec, format);
        return 0;
    }
    if (!weights.empty()) {
        std::vector<double> a = parse_double_list(weights);
        json rec;
        rec["mean"] = mean;
        rec["order"] = order;
        rec["n"] = a.size();
        if (mean == "cesaro")
            rec["value"] = cesaro_mean(a, order, a.size());
        else if (mean == "holder")
            rec["value"] = holder_mean(a, order, a.size());
        else
            throw UsageError("unknown mean '" + mean + "' (want cesaro, holder)");
        emit_record(rec, format);
        return 0;
    }
    if (!series.empty()) {
        WeightedComb comb = series_by_name(series);
        LadderEstimate lad =
            cesaro_evaluation_ladder(comb, [](double) { return 1.0; }, order, cutoff, tol);
        json rec;
        rec["series"] = series;
        rec["order"] = order;
        add_ladder(rec, lad, format);
        if (!lad.converged) return report_nonconvergence(lad, "sum");
        emit_record(rec, format);
        return 0;
    }
    throw UsageError("sum: pick one of --series, --weights, --fp-power, --pf, --pf-defect");
}

// ---------------------------------------------------------------- zeta

int run_zeta(const std::string& format, double alpha, int order, double cutoff, double tol,
             int neg_int, int prime_zero, int sampling, int lattice, const std::string& g_name,
             double eps, int sampling_order, int dim) {
    if (neg_int >= 0) {
        Rational v = zeta_neg_int(neg_int);
        json rec;
        rec["argument"] = -neg_int;
        rec["value"] = to_double(v);
        rec["exact"] = rational_str(v);
        rec["method"] = "bernoulli_closed_form";
        emit_record(rec, format);
        return 0;
    }
    if (prime_zero) {
        LadderEstimate lad = zeta_prime_zero_report(cutoff, order, tol);
        json rec;
        rec["order"] = order;
        rec["cutoff"] = cutoff;
        add_ladder(rec, lad, format);
        rec["target"] = -0.5 * std::log(2.0 * M_PI);
        if (!lad.converged) return report_nonconvergence(lad, "zeta --prime-zero");
        emit_record(rec, format);
        return 0;
    }
    if (sampling) {
        TestFunctional g = functional_by_name(g_name);
        double expansion = sampling_expansion(g, eps, sampling_order);
        double direct = sampling_sum(g, eps);
        json rec;
        rec["g"] = g_name;
        rec["eps"] = eps;
        rec["order"] = sampling_order;
        rec["expansion"] = expansion;
        rec["direct_sum"] = direct;
        rec["difference"] = expansion - direct;
        emit_record(rec, format);
        return 0;
    }
    if (lattice) {
        TestFunctional g = functional_by_name(g_name);
        double sum = lattice_sampling(g, eps, dim);
        double integral = lattice_integral(g, eps, dim);
        json rec;
        rec["g"] = g_name;
        rec["eps"] = eps;
        rec["dim"] = dim;
        rec["lattice_sum"] = sum;
        rec["integral"] = integral;
        rec["rel_diff"] = std::abs(sum - integral) / std::abs(integral);
        emit_record(rec, format);
        return 0;
    }
    LadderEstimate lad = zeta_via_cesaro_report(alpha, order, cutoff, tol);
    json rec;
    rec["alpha"] = alpha;
    rec["order"] = order;
    rec["cutoff"] = cutoff;
    add_ladder(rec, lad, format);
    rec["method"] = "cesaro";
    double nearest = std::round(alpha);
    if (std::abs(alpha - nearest) < 1e-12 && nearest >= 0) {
        Rational target = zeta_neg_int(static_cast<int>(nearest));
        rec["target"] = to_double(target);
        rec["target_exact"] = rational_str(target);
    } else if (alpha < -1.0) {
        rec["target"] = zeta_convergent(-alpha);
    }
    if (!lad.converged) return report_nonconvergence(lad, "zeta");
    emit_record(rec, format);
    return 0;
}

// ---------------------------------------------------------------- spectrum

int run_spectrum(const std::string& format, const std::string& model, int dim, long long max_q,
                 long long l_max, double shift, double line_density_at) {
    if (line_density_at > 0) {
        json rec;
        rec["lambda"] = line_density_at;
        rec["density"] = line_density(line_density_at);
        emit_record(rec, format);
        return 0;
    }
    Spectrum s = build_spectrum(model, dim, max_q, l_max, shift);
    if (format == "tab") {
        write_tab(std::cout, s);
        return 0;
    }
    if (format == "json") {
        json rec;
        rec["model"] = s.name;
        rec["dim"] = s.n;
        if (s.volume) rec["volume"] = *s.volume;
        rec["horizon"] = s.horizon;
        json arr = json::array();
        long long running = 0;
        for (const auto& e : s.entries) {
            running += e.multiplicity;
            json row;
            row["lambda"] = e.eigenvalue;
            row["multiplicity"] = e.multiplicity;
            row["count"] = running;
            arr.push_back(row);
        }
        rec["entries"] = arr;
        std::cout << rec.dump(2) << "\n";
        return 0;
    }
    std::vector<std::vector<std::string>> rows;
    long long running = 0;
    for (const auto& e : s.entries) {
        running += e.multiplicity;
        rows.push_back({fmt15(e.eigenvalue), std::to_string(e.multiplicity),
                        std::to_string(running)});
    }
    emit_rows({"lambda", "multiplicity", "count"}, rows, format, "entries");
    return 0;
}

// ---------------------------------------------------------------- count

int run_count(const std::string& format, const std::string& model, int dim, long long max_q,
              long long l_max, double shift, const std::string& file, double lam,
              const std::string& side, int riesz_order, const std::string& expansion_surface,
              int weyl, double volume, int smoothing, double beta, const std::string& potential,
              const std::string& bracket) {
    if (smoothing) {
        json rec;
        rec["beta"] = beta;
        rec["order"] = riesz_order;
        rec["factor"] = smoothing_factor(beta, riesz_order);
        emit_record(rec, format);
        return 0;
    }
    if (weyl) {
        json rec;
        rec["dim"] = dim;
        rec["volume"] = volume;
        rec["coefficient"] = weyl_leading(dim, volume);
        emit_record(rec, format);
        return 0;
    }
    if (!expansion_surface.empty()) {
        int n = expansion_surface == "sphere2" ? 2
                : expansion_surface == "sphere3" ? 3
                                                 : 0;
        if (n == 0) throw UsageError("--expansion wants sphere2 or sphere3");
        CountingExpansion e = counting_expansion_sphere(n);
        json rec;
        rec["surface"] = expansion_surface;
        json dt = json::array();
        for (const auto& [c, a] : e.density_terms)
            dt.push_back({{"coefficient", rational_str(c)}, {"exponent", rational_str(a)}});
        rec["density_terms"] = dt;
        json mo = json::array();
        for (const auto& m : e.moments) mo.push_back(rational_str(m));
        rec["moments"] = mo;
        json ct = json::array();
        for (const auto& [c, a] : e.counting_terms())
            ct.push_back({{"coefficient", rational_str(c)}, {"exponent", rational_str(a)}});
        rec["counting_terms"] = ct;
        json dc = json::array();
        for (const auto& c : e.delta_coefficients()) dc.push_back(rational_str(c));
        rec["delta_coefficients"] = dc;
        std::cout << rec.dump(2) << "\n";
        return 0;
    }
    if (!potential.empty()) {
        std::function<double(double)> V;
        double a, b;
        if (potential == "harmonic") {
            V = [](double x) { return 0.25 * x * x; };
            a = -2.0 * std::sqrt(lam) - 1.0;
            b = -a;
        } else if (potential == "abs") {
            V = [](double x) { return std::abs(x); };
            a = -lam - 1.0;
            b = lam + 1.0;
        } else if (potential == "zero") {
            V = [](double) { return 0.0; };
            if (bracket.empty()) throw UsageError("--potential zero needs --bracket a,b");
            a = b = 0;
        } else {
            throw UsageError("unknown potential '" + potential + "' (want harmonic, abs, zero)");
        }
        if (!bracket.empty()) {
            std::vector<double> ab = parse_double_list(bracket);
            if (ab.size() != 2) throw UsageError("--bracket wants two numbers a,b");
            a = ab[0];
            b = ab[1];
        }
        PhaseSpaceResult r = phase_space_counting(V, lam, a, b);
        json rec;
        rec["potential"] = potential;
        rec["lambda"] = lam;
        rec["bracket_lo"] = a;
        rec["bracket_hi"] = b;
        rec["value"] = r.value;
        rec["boundary_warning"] = r.boundary_warning;
        emit_record(rec, format);
        return 0;
    }
    Spectrum s;
    if (!file.empty()) {
        std::ifstream in(file);
        if (!in) throw std::runtime_error("cannot open spectrum file '" + file + "'");
        s = read_tab(in);
    } else {
        s = build_spectrum(model, dim, max_q, l_max, shift);
    }
    json rec;
    rec["model"] = s.name.empty() ? file : s.name;
    rec["lambda"] = lam;
    if (riesz_order > 0) {
        rec["riesz_order"] = riesz_order;
        rec["value"] = riesz_counting(s, riesz_order, lam);
    } else {
        rec["side"] = side;
        rec["count"] =
            counting_function(s, lam, side == "left" ? Side::left : Side::right);
    }
    emit_record(rec, format);
    return 0;
}

// ---------------------------------------------------------------- moments

int run_moments(const std::string& format, const std::string& surface, const std::string& weight,
                const std::string& map_poly, int j, int upto, int start) {
    std::vector<std::vector<std::string>> rows;
    auto add_row = [&](int jj, const Rational& v) {
        rows.push_back({std::to_string(jj), rational_str(v), fmt15(to_double(v))});
    };
    if (!surface.empty()) {
        RationalPolynomial w, m;
        int start_index = 1;
        if (surface == "sphere2") {
            w = RationalPolynomial{Rational(1), Rational(2)};
            m = RationalPolynomial{Rational(0), Rational(1), Rational(1)};
        } else if (surface == "sphere3") {
            w = m = RationalPolynomial{Rational(1), Rational(2), Rational(1)};
            start_index = 0;
        } else {
            throw UsageError("--surface wants sphere2 or sphere3");
        }
        int hi = upto >= 0 ? upto : (j >= 0 ? j : 3);
        int lo = upto >= 0 ? 0 : hi;
        for (int jj = lo; jj <= hi; ++jj) add_row(jj, generalized_moments(w, m, jj, start_index));
        emit_rows({"j", "exact", "value"}, rows, format, "moments");
        return 0;
    }
    if (weight.empty() || map_poly.empty())
        throw UsageError("moments: pick --surface or give both --weight and --map");
    RationalPolynomial w(parse_rational_list(weight));
    RationalPolynomial m(parse_rational_list(map_poly));
    int hi = upto >= 0 ? upto : (j >= 0 ? j : 3);
    int lo = upto >= 0 ? 0 : hi;
    for (int jj = lo; jj <= hi; ++jj) add_row(jj, generalized_moments(w, m, jj, start));
    emit_rows({"j", "exact", "value"}, rows, format, "moments");
    return 0;
}

// ---------------------------------------------------------------- revert

int run_revert(const std::string& format, const std::string& symbol, int dim, int j, int j_max,
               int order, int density, const std::string& q_powers, int a2_set, double curvature,
               double potential_c, int b2k_set, double a2k, int k, int area_dim,
               int vanishing_count, unsigned seed) {
    if (area_dim > 0) {
        json rec;
        rec["dim"] = area_dim;
        rec["area"] = sphere_area(area_dim);
        emit_record(rec, format);
        return 0;
    }
    if (!q_powers.empty()) {
        std::vector<double> s = parse_double_list(q_powers);
        if (s.size() != 3) throw UsageError("--q wants three numbers s1,s2,s3");
        auto [q2, q3] = q_coefficients(s[0], s[1], s[2]);
        json rec;
        rec["s1"] = s[0];
        rec["s2"] = s[1];
        rec["s3"] = s[2];
        rec["q2"] = q2;
        rec["q3"] = q3;
        emit_record(rec, format);
        return 0;
    }
    if (a2_set) {
        json rec;
        rec["dim"] = dim;
        rec["curvature"] = curvature;
        rec["potential"] = potential_c;
        rec["a2"] = a2_laplacian(dim, curvature, potential_c);
        emit_record(rec, format);
        return 0;
    }
    if (b2k_set) {
        json rec;
        rec["a2k"] = a2k;
        rec["dim"] = dim;
        rec["k"] = k;
        rec["b2k"] = b2k_relation(a2k, dim, k);
        emit_record(rec, format);
        return 0;
    }
    if (vanishing_count > 0) {
        std::mt19937 rng(seed);
        std::uniform_int_distribution<int> numer(-100, 100);
        Rational worst = 0;
        for (int trial = 0; trial < vanishing_count; ++trial) {
            std::vector<Rational> coeffs = {Rational(1), Rational(numer(rng), 100),
                                            Rational(numer(rng), 100),
                                            Rational(numer(rng), 100)};
            int n = 1 + trial % 5;
            Rational cn = lagrange_burmann_cj(LaurentSeries::symbol(coeffs), n, n);
            if (abs(cn) > worst) worst = abs(cn);
        }
        json rec;
        rec["count"] = vanishing_count;
        rec["seed"] = seed;
        rec["max_abs_cn"] = rational_str(worst);
        rec["all_zero"] = worst == 0;
        emit_record(rec, format);
        return 0;
    }
    if (symbol.empty()) throw UsageError("revert: give --symbol p1,p0,p-1,... (or another mode)");
    LaurentSeries p = LaurentSeries::symbol(parse_rational_list(symbol));
    if (density) {
        DensityExpansion e = density_expansion(p, dim, order, j_max >= 0 ? j_max : 3);
        json rec;
        rec["dim"] = e.n;
        rec["order"] = e.d;
        rec["prefactor"] = e.prefactor;
        json terms = json::array();
        auto ts = e.terms();
        for (std::size_t i = 0; i < ts.size(); ++i) {
            json term;
            term["j"] = i;
            term["c"] = rational_str(e.c[i]);
            term["a"] = e.a[i];
            term["coefficient"] = ts[i].first;
            term["exponent"] = ts[i].second;
            terms.push_back(term);
        }
        rec["terms"] = terms;
        std::cout << rec.dump(2) << "\n";
        return 0;
    }
    Rational cj = lagrange_burmann_cj(p, dim, j >= 0 ? j : 0);
    json rec;
    rec["symbol"] = symbol;
    rec["dim"] = dim;
    rec["j"] = j >= 0 ? j : 0;
    rec["exact"] = rational_str(cj);
    rec["value"] = to_double(cj);
    emit_record(rec, format);
    return 0;
}

// ---------------------------------------------------------------- heat

int run_heat(const std::string& format, const std::string& model, int dim, long long max_q,
             long long l_max, double shift, double t, double tol, const std::string& compare,
             int partition, const std::string& expansion_surface, const std::string& g_name,
             int t_orders, const std::string& ladder, int n_terms) {
    if (partition) {
        S3PartitionCheck r = s3_partition_check(t);
        json rec;
        rec["t"] = t;
        rec["exact"] = r.exact;
        rec["asymptote"] = r.asymptote;
        rec["rel_diff"] = r.rel_diff;
        emit_record(rec, format);
        return 0;
    }
    if (!expansion_surface.empty()) {
        int n = expansion_surface == "sphere2" ? 2
                : expansion_surface == "sphere3" ? 3
                                                 : 0;
        if (n == 0) throw UsageError("--expansion wants sphere2 or sphere3");
        SmallTExpansion e =
            cesaro_to_small_t(counting_expansion_sphere(n), functional_by_name(g_name), t_orders);
        json rec;
        rec["surface"] = expansion_surface;
        rec["g"] = g_name;
        rec["t_orders"] = t_orders;
        json terms = json::array();
        for (const auto& a : e.terms) {
            json term;
            term["coefficient"] = a.coefficient;
            if (a.exact) term["exact"] = rational_str(*a.exact);
            term["t_exponent"] = a.t_exponent;
            term["log_power"] = a.log_power;
            terms.push_back(term);
        }
        rec["terms"] = terms;
        std::cout << rec.dump(2) << "\n";
        return 0;
    }
    if (!ladder.empty()) {
        std::vector<double> ts = parse_double_list(ladder);
        json rec;
        rec["ladder"] = ts;
        rec["terms"] = n_terms;
        rec["slope"] = mulholland_error_order(ts, n_terms);
        emit_record(rec, format);
        return 0;
    }
    if (compare == "mulholland") {
        Spectrum s = spectrum_for_heat("sphere2", 2, max_q, l_max, 0.0, t);
        double exact = heat_trace(s, t, tol);
        SmallTExpansion e = cesaro_to_small_t(counting_expansion_sphere(2),
                                              TestFunctional::exponential(), 3)
                                .truncated(4);
        double expansion = e.eval(t);
        json rec;
        rec["t"] = t;
        rec["exact"] = exact;
        rec["expansion"] = expansion;
        rec["error"] = exact - expansion;
        emit_record(rec, format);
        return 0;
    }
    if (!compare.empty()) throw UsageError("--compare wants 'mulholland'");
    Spectrum s = spectrum_for_heat(model, dim, max_q, l_max, shift, t);
    json rec;
    rec["model"] = s.name;
    rec["t"] = t;
    rec["tol"] = tol;
    rec["value"] = heat_trace(s, t, tol);
    emit_record(rec, format);
    return 0;
}

// ---------------------------------------------------------------- cc

int run_cc(const std::string& format, const std::string& phi_name, double cutoff, long long q_max,
           int n_terms) {
    TestFunctional phi = functional_by_name(phi_name);
    if (q_max < 0) {
        double reach = phi_name == "gauss" ? 8.0 : 35.0;
        q_max = static_cast<long long>(std::ceil(reach * cutoff * cutoff)) + 400;
    }
    Spectrum s = torus_spectrum(4, q_max);
    SpectralActionCheck r = chamseddine_connes(s, phi, cutoff, n_terms);
    double c4 = cutoff * cutoff * cutoff * cutoff;
    json rec;
    rec["phi"] = phi_name;
    rec["cutoff"] = cutoff;
    rec["q_max"] = q_max;
    rec["numeric"] = r.numeric;
    rec["predicted"] = r.predicted;
    rec["numeric_over_cutoff4"] = r.numeric / c4;
    rec["predicted_over_cutoff4"] = r.predicted / c4;
    emit_record(rec, format);
    return 0;
}

int run(int argc, char** argv) {
    CLI::App app{"Cesaro/Riesz summability, spectral counting, and heat-expansion toolkit"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string format = "json";
    int threads = 0;
    app.add_option("--format", format, "output format: json, csv, table (spectrum also: tab)")
        ->capture_default_str();
    app.add_option("--threads", threads, "worker threads for block-summed reductions");

    // sum
    auto* sum = app.add_subcommand("sum", "divergent-series means and finite parts");
    std::string sum_series, sum_weights, sum_mean = "cesaro", sum_g = "exp";
    int sum_order = 2, sum_pf_j = 0, sum_defect_j = 1;
    double sum_cutoff = 4e6, sum_tol = 1e-3, sum_fp_alpha = 0.0, sum_fp_upper = 1.0;
    double sum_defect_sigma = 2.0;
    sum->add_option("--series", sum_series, "built-in series: grandi, cos, ones");
    sum->add_option("--weights", sum_weights, "explicit sequence a1,a2,...");
    sum->add_option("--mean", sum_mean, "mean for --weights: cesaro or holder")
        ->capture_default_str();
    sum->add_option("--order", sum_order, "summability order k")->capture_default_str();
    sum->add_option("--cutoff", sum_cutoff, "ladder cutoff X")->capture_default_str();
    sum->add_option("--tol", sum_tol, "ladder stabilization tolerance")->capture_default_str();
    auto* fp_opt = sum->add_option("--fp-power", sum_fp_alpha,
                                   "finite part of int_0^upper x^alpha dx for this alpha");
    sum->add_option("--upper", sum_fp_upper, "upper limit for --fp-power")->capture_default_str();
    sum->add_option("--pf", sum_pf_j, "pseudofunction Fp int_0^inf g(x)/x^j dx for this j");
    sum->add_option("--g", sum_g, "test functional: exp, gauss, zero")->capture_default_str();
    auto* defect_opt = sum->add_option("--pf-defect", sum_defect_j,
                                       "scaling-defect coefficient for this j (with --sigma)");
    sum->add_option("--sigma", sum_defect_sigma, "scale for --pf-defect")->capture_default_str();

    // zeta
    auto* zeta = app.add_subcommand("zeta", "zeta values, sampling and lattice expansions");
    double z_alpha = 0.0, z_cutoff = 1e5, z_tol = 1e-3, z_eps = 0.1;
    int z_order = 2, z_neg = -1, z_prime = 0, z_sampling = 0, z_lattice = 0, z_sorder = 3,
        z_dim = 2;
    std::string z_g = "exp";
    zeta->add_option("--alpha", z_alpha, "estimate zeta(-alpha) by the Cesaro construction")
        ->capture_default_str();
    zeta->add_option("--order", z_order, "Cesaro order k")->capture_default_str();
    zeta->add_option("--cutoff", z_cutoff, "ladder cutoff X")->capture_default_str();
    zeta->add_option("--tol", z_tol, "ladder stabilization tolerance")->capture_default_str();
    zeta->add_option("--neg-int", z_neg, "exact zeta(-m) for this m");
    zeta->add_flag("--prime-zero", z_prime, "estimate zeta'(0)");
    zeta->add_flag("--sampling", z_sampling, "sampling expansion vs direct sum");
    zeta->add_flag("--lattice", z_lattice, "lattice sampling vs integral");
    zeta->add_option("--g", z_g, "test functional: exp, gauss, zero")->capture_default_str();
    zeta->add_option("--eps", z_eps, "mesh for --sampling / --lattice")->capture_default_str();
    zeta->add_option("--sampling-order", z_sorder, "truncation order for --sampling")
        ->capture_default_str();
    zeta->add_option("--dim", z_dim, "dimension for --lattice")->capture_default_str();

    // spectrum
    auto* spectrum = app.add_subcommand("spectrum", "model spectra");
    std::string sp_model = "torus";
    int sp_dim = 0;
    long long sp_max = -1, sp_lmax = -1;
    double sp_shift = 0.0, sp_line = 0.0;
    spectrum->add_option("--model", sp_model, "torus, sphere, oscillator (fused: torus2, ...)")
        ->capture_default_str();
    spectrum->add_option("--dim", sp_dim, "manifold dimension");
    spectrum->add_option("--max", sp_max, "torus eigenvalue bound q_max");
    spectrum->add_option("--lmax", sp_lmax, "sphere/oscillator level bound");
    spectrum->add_option("--shift", sp_shift, "constant added to sphere eigenvalues");
    spectrum->add_option("--line-density", sp_line,
                         "diagonal density of the real-line Laplacian at this lambda");

    // count
    auto* count = app.add_subcommand("count", "counting functions and phase-space integrals");
    std::string c_model = "torus", c_side = "right", c_file, c_expansion, c_potential, c_bracket;
    int c_dim = 0, c_riesz = 0, c_weyl = 0, c_smoothing = 0;
    long long c_max = -1, c_lmax = -1;
    double c_shift = 0.0, c_lambda = 0.0, c_volume = 0.0, c_beta = 1.0;
    count->add_option("--model", c_model, "model spectrum name")->capture_default_str();
    count->add_option("--dim", c_dim, "manifold dimension");
    count->add_option("--max", c_max, "torus eigenvalue bound");
    count->add_option("--lmax", c_lmax, "sphere/oscillator level bound");
    count->add_option("--shift", c_shift, "sphere eigenvalue shift");
    count->add_option("--file", c_file, "read spectrum from a tab file instead of a model");
    count->add_option("--lambda", c_lambda, "evaluation point");
    count->add_option("--side", c_side, "left or right continuity of N")->capture_default_str();
    count->add_option("--riesz-order", c_riesz, "Riesz smoothing order k (0 = plain count)");
    count->add_option("--expansion", c_expansion, "closed-form expansion: sphere2 or sphere3");
    count->add_flag("--weyl", c_weyl, "leading Weyl coefficient from --dim and --volume");
    count->add_option("--volume", c_volume, "manifold volume for --weyl");
    count->add_flag("--smoothing", c_smoothing, "smoothing factor rho(--beta, --riesz-order)");
    count->add_option("--beta", c_beta, "power for --smoothing")->capture_default_str();
    count->add_option("--potential", c_potential,
                      "1-D phase-space integral: harmonic, abs, zero");
    count->add_option("--bracket", c_bracket, "integration bracket a,b for --potential");

    // moments
    auto* moments = app.add_subcommand("moments", "generalized moments in exact rationals");
    std::string m_surface, m_weight, m_map;
    int m_j = -1, m_upto = -1, m_start = 1;
    moments->add_option("--surface", m_surface, "sphere2 or sphere3");
    moments->add_option("--weight", m_weight, "weight polynomial coefficients c0,c1,...");
    moments->add_option("--map", m_map, "eigenvalue map polynomial coefficients");
    moments->add_option("--j", m_j, "single moment index");
    moments->add_option("--upto", m_upto, "emit moments j = 0..upto");
    moments->add_option("--start", m_start, "first support index: 0 or 1")->capture_default_str();

    // revert
    auto* revert = app.add_subcommand("revert", "symbol reversion and heat-coefficient algebra");
    std::string r_symbol, r_q;
    int r_dim = 1, r_j = -1, r_jmax = -1, r_order = 1, r_density = 0, r_a2 = 0, r_b2k = 0,
        r_k = 1, r_area = 0, r_vanish = 0;
    double r_curv = 0.0, r_pot = 0.0, r_a2k = 0.0;
    unsigned r_seed = 1;
    revert->add_option("--symbol", r_symbol, "symbol coefficients p1,p0,p-1,... (rationals)");
    revert->add_option("--dim", r_dim, "dimension n")->capture_default_str();
    revert->add_option("--j", r_j, "single coefficient c_j");
    revert->add_option("--jmax", r_jmax, "expansion length for --density");
    revert->add_option("--order", r_order, "operator order d for --density")->capture_default_str();
    revert->add_flag("--density", r_density, "full density expansion");
    revert->add_option("--q", r_q, "q2,q3 from symbol powers s1,s2,s3");
    revert->add_flag("--a2", r_a2, "pointwise a2 from --dim, --curvature, --potential");
    revert->add_option("--curvature", r_curv, "scalar curvature R for --a2");
    revert->add_option("--potential", r_pot, "scalar potential C for --a2");
    revert->add_flag("--b2k", r_b2k, "heat coefficient from --a2k, --dim, --k");
    revert->add_option("--a2k", r_a2k, "input coefficient for --b2k");
    revert->add_option("--k", r_k, "half-order k for --b2k")->capture_default_str();
    revert->add_option("--sphere-area", r_area, "surface area of S^{n-1} for this n");
    revert->add_option("--vanishing-check", r_vanish,
                       "verify c_n = 0 on this many random symbols");
    revert->add_option("--seed", r_seed, "seed for --vanishing-check")->capture_default_str();

    // heat
    auto* heat = app.add_subcommand("heat", "heat traces and small-t expansions");
    std::string h_model = "sphere2", h_compare, h_expansion, h_g = "exp", h_ladder;
    int h_dim = 0, h_partition = 0, h_torders = 3, h_terms = 4;
    long long h_max = -1, h_lmax = -1;
    double h_shift = 0.0, h_t = 0.1, h_tol = 1e-12;
    heat->add_option("--model", h_model, "model spectrum name")->capture_default_str();
    heat->add_option("--dim", h_dim, "manifold dimension");
    heat->add_option("--max", h_max, "torus eigenvalue bound");
    heat->add_option("--lmax", h_lmax, "sphere/oscillator level bound");
    heat->add_option("--shift", h_shift, "sphere eigenvalue shift");
    heat->add_option("--t", h_t, "time parameter")->capture_default_str();
    heat->add_option("--tol", h_tol, "trace truncation tolerance")->capture_default_str();
    heat->add_option("--compare", h_compare, "compare against an expansion: mulholland");
    heat->add_flag("--partition-check", h_partition,
                   "shifted S^3 partition function vs its asymptote");
    heat->add_option("--expansion", h_expansion, "small-t expansion of sphere2 or sphere3");
    heat->add_option("--g", h_g, "test functional for --expansion")->capture_default_str();
    heat->add_option("--t-orders", h_torders, "highest t power for --expansion")
        ->capture_default_str();
    heat->add_option("--error-order", h_ladder, "t ladder t1,t2,... for the error-order fit");
    heat->add_option("--terms", h_terms, "expansion terms kept in the error-order fit")
        ->capture_default_str();

    // cc
    auto* cc = app.add_subcommand("cc", "bosonic spectral action on the flat 4-torus");
    std::string cc_phi = "exp";
    double cc_cutoff = 20.0;
    long long cc_qmax = -1;
    int cc_terms = 1;
    cc->add_option("--phi", cc_phi, "cutoff functional: exp, gauss")->capture_default_str();
    cc->add_option("--cutoff", cc_cutoff, "energy cutoff Lambda")->capture_default_str();
    cc->add_option("--qmax", cc_qmax, "spectrum enumeration bound (default: from phi decay)");
    cc->add_option("--terms", cc_terms, "predicted-expansion terms")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (threads > 0) thread_count() = threads;
    if (format != "json" && format != "csv" && format != "table" && format != "tab")
        throw UsageError("unknown format '" + format + "'");
    if (format == "tab" && !spectrum->parsed())
        throw UsageError("format 'tab' applies to the spectrum subcommand only");

    if (sum->parsed())
        return run_sum(format, sum_series, sum_weights, sum_mean, sum_order, sum_cutoff, sum_tol,
                       static_cast<int>(fp_opt->count()), sum_fp_alpha, sum_fp_upper, sum_pf_j,
                       sum_g, static_cast<int>(defect_opt->count()), sum_defect_j,
                       sum_defect_sigma);
    if (zeta->parsed())
        return run_zeta(format, z_alpha, z_order, z_cutoff, z_tol, z_neg, z_prime, z_sampling,
                        z_lattice, z_g, z_eps, z_sorder, z_dim);
    if (spectrum->parsed())
        return run_spectrum(format, sp_model, sp_dim, sp_max, sp_lmax, sp_shift, sp_line);
    if (count->parsed())
        return run_count(format, c_model, c_dim, c_max, c_lmax, c_shift, c_file, c_lambda, c_side,
                         c_riesz, c_expansion, c_weyl, c_volume, c_smoothing, c_beta, c_potential,
                         c_bracket);
    if (moments->parsed())
        return run_moments(format, m_surface, m_weight, m_map, m_j, m_upto, m_start);
    if (revert->parsed())
        return run_revert(format, r_symbol, r_dim, r_j, r_jmax, r_order, r_density, r_q, r_a2,
                          r_curv, r_pot, r_b2k, r_a2k, r_k, r_area, r_vanish, r_seed);
    if (heat->parsed())
        return run_heat(format, h_model, h_dim, h_max, h_lmax, h_shift, h_t, h_tol, h_compare,
                        h_partition, h_expansion, h_g, h_torders, h_ladder, h_terms);
    if (cc->parsed()) return run_cc(format, cc_phi, cc_cutoff, cc_qmax, cc_terms);
    throw UsageError("no subcommand given");
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const specsum::NonConvergence& e) {
        std::cerr << "did not converge: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
