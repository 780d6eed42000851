#include "casimir/cli.hpp"

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "casimir/characters.hpp"
#include "casimir/io.hpp"
#include "casimir/radial.hpp"
#include "casimir/rep_oracle.hpp"
#include "casimir/spherical.hpp"
#include "casimir/theta.hpp"

namespace casimir {

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Complex parse_complex(const std::string& text) {
    std::string s = text;
    s.erase(std::remove(s.begin(), s.end(), ' '), s.end());
    if (s.empty()) throw UsageError("empty complex literal");
    if (s.back() != 'i') {
        std::size_t pos = 0;
        const double re = std::stod(s, &pos);
        if (pos != s.size()) throw UsageError("bad complex literal: " + text);
        return {re, 0.0};
    }
    s.pop_back();  // trailing 'i'
    // split at the sign of the imaginary part (not leading, not an exponent)
    std::size_t split = std::string::npos;
    for (std::size_t k = s.size(); k-- > 1;) {
        if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    auto parse_im = [&](const std::string& im) {
        if (im.empty() || im == "+") return 1.0;
        if (im == "-") return -1.0;
        std::size_t pos = 0;
        const double v = std::stod(im, &pos);
        if (pos != im.size()) throw UsageError("bad complex literal: " + text);
        return v;
    };
    if (split == std::string::npos) return {0.0, parse_im(s)};
    std::size_t pos = 0;
    const double re = std::stod(s.substr(0, split), &pos);
    if (pos != split) throw UsageError("bad complex literal: " + text);
    return {re, parse_im(s.substr(split))};
}

Weight parse_weight(const std::string& text) {
    std::int64_t a, k, m;
    char c1, c2;
    std::istringstream is(text);
    if (!(is >> a >> c1 >> k >> c2 >> m) || c1 != ',' || c2 != ',' || !is.eof()) {
        throw UsageError("expected weight as h1,level,d: " + text);
    }
    return Weight{a, k, m};
}

Character1D parse_character(const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos) throw UsageError("expected character as B0,B1: " + text);
    try {
        return Character1D{rational_from_string(text.substr(0, comma)),
                           rational_from_string(text.substr(comma + 1))};
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

ThetaChar parse_theta_char(const std::string& text) {
    if (text.size() != 2 || (text[0] != '0' && text[0] != '1') ||
        (text[1] != '0' && text[1] != '1')) {
        throw UsageError("expected theta characteristic as two bits, e.g. 01");
    }
    return ThetaChar{text[0] - '0', text[1] - '0'};
}

void emit(const std::string& payload, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << payload;
        if (!payload.empty() && payload.back() != '\n') std::cout << "\n";
        return;
    }
    std::ofstream os(out_path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open output file " + out_path);
    os << payload;
}

unsigned thread_cap() {
    if (const char* env = std::getenv("CASIMIR_LAB_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return unsigned(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

// deterministic fan-out: results land by index regardless of schedule
std::vector<CheckReport> run_checks(std::vector<std::function<CheckReport()>> jobs) {
    const unsigned cap = std::min<unsigned>(thread_cap(), unsigned(jobs.size() ? jobs.size() : 1));
    std::vector<CheckReport> results(jobs.size());
    if (cap <= 1) {
        for (std::size_t i = 0; i < jobs.size(); ++i) results[i] = jobs[i]();
        return results;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < cap; ++t) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= jobs.size()) return;
                results[i] = jobs[i]();
            }
        });
    }
    for (auto& th : pool) th.join();
    return results;
}

nlohmann::json reports_to_json(const std::vector<CheckReport>& reports, std::int64_t window) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : reports) {
        nlohmann::json j{{"check", r.name}, {"window", window}, {"pass", r.pass}};
        if (!r.pass) j["witness"] = r.detail;
        arr.push_back(std::move(j));
    }
    return arr;
}

std::string render_reports(const std::vector<CheckReport>& reports, std::int64_t window,
                           const std::string& format) {
    if (format == "json") return reports_to_json(reports, window).dump(2);
    std::ostringstream os;
    for (const auto& r : reports) {
        os << (r.pass ? "[PASS] " : "[FAIL] ") << r.name;
        if (!r.pass) os << " -- " << r.detail;
        os << "\n";
    }
    return os.str();
}

int run_parsed(const std::vector<std::string>& argv);

}  // namespace

int cli_run(const std::vector<std::string>& argv) {
    try {
        return run_parsed(argv);
    } catch (const CLI::ParseError&) {
        return 2;  // CLI11 already printed the message in run_parsed
    } catch (const UsageError& e) {
        std::cerr << "error: usage: " << e.what() << "\n";
        return 2;
    } catch (const MathError& e) {
        std::cerr << "error: math: " << e.what() << "\n";
        return 3;
    } catch (const std::domain_error& e) {
        std::cerr << "error: math: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: math: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: internal: " << e.what() << "\n";
        return 3;
    }
}

namespace {

int run_parsed(const std::vector<std::string>& argv) {
    CLI::App app{"exact q-series machinery for the radial Casimir action of affine sl2"};
    app.require_subcommand(1);

    std::string out_path, format = "json";
    std::string char_bits = "01", lambda_text = "0,0,0", eta_text = "0,0", chi_text = "0,0";
    std::string z_text = "0.3-0.1i", tau_text = "3i", input_path, which = "1";
    std::int64_t depth = 20;
    int ypow = 1, qpow = 1;
    double tol = 1e-8;
    bool conjugated = false, perturb = false, with_oracle = false, with_invariance = false;
    bool with_heun = false;

    auto add_common = [&](CLI::App* sub, bool with_format = true) {
        sub->add_option("--out", out_path, "write output to a file instead of stdout");
        if (with_format) sub->add_option("--format", format, "output format: json or csv");
        sub->add_option("--depth", depth, "window depth in doubled rho-grade units (g2)");
    };

    auto* wp = app.add_subcommand("wp-series", "normalized Weierstrass series P_{ij}");
    wp->add_option("--char", char_bits, "theta characteristic, two bits");
    wp->add_option("--ypow", ypow, "substitute y -> y^{ypow}");
    wp->add_option("--qpow", qpow, "substitute q -> q^{qpow}");
    add_common(wp);

    auto* tc = app.add_subcommand("theta-check", "theta sum/product and numeric checks");
    tc->add_option("--tol", tol, "numeric tolerance");
    add_common(tc);

    auto* den = app.add_subcommand("denominator", "Weyl denominators");
    den->add_option("--which", which, "1, 2 or half");
    add_common(den);

    auto* orb = app.add_subcommand("orbit-sum", "Weyl orbit sum of a dominant weight");
    orb->add_option("--lambda", lambda_text, "weight as h1,level,d");
    add_common(orb);

    auto* ch = app.add_subcommand("character", "Kac-Weyl character of a dominant weight");
    ch->add_option("--lambda", lambda_text, "weight as h1,level,d");
    add_common(ch);

    auto* ra = app.add_subcommand("radial-apply", "apply the twisted radial Casimir action");
    ra->add_option("--eta", eta_text, "character values on B0,B1");
    ra->add_option("--chi", chi_text, "character values on B0,B1");
    ra->add_flag("--conjugated", conjugated, "use the deltah-conjugated form");
    ra->add_option("--input", input_path, "series JSON file")->required();
    add_common(ra);

    auto* suite = app.add_subcommand("identity-suite", "run every operator identity check");
    suite->add_flag("--perturb", perturb, "inject a potential perturbation (negative control)");
    add_common(suite);

    auto* sph = app.add_subcommand("spherical", "solve a twisted zonal spherical function");
    sph->add_option("--lambda", lambda_text, "highest weight as h1,level,d");
    sph->add_option("--eta", eta_text, "character values on B0,B1");
    sph->add_option("--chi", chi_text, "character values on B0,B1");
    sph->add_flag("--oracle", with_oracle, "cross-check against the representation oracle");
    sph->add_flag("--check-invariance", with_invariance, "run invariance and support checks");
    sph->add_flag("--heun-check", with_heun, "run the numeric Heun-KZB eigen-check");
    sph->add_option("--z", z_text, "evaluation point z");
    sph->add_option("--tau", tau_text, "evaluation point tau (Im > 0)");
    sph->add_option("--tol", tol, "numeric tolerance for --heun-check");
    add_common(sph);

    auto* we = app.add_subcommand("wp-eval", "dual-route numeric evaluation of 4 pi^2 P_{ij}");
    we->add_option("--char", char_bits, "theta characteristic, two bits");
    we->add_option("--z", z_text, "evaluation point z");
    we->add_option("--tau", tau_text, "evaluation point tau (Im > 0)");
    we->add_option("--tol", tol, "agreement tolerance");
    add_common(we);

    auto* he = app.add_subcommand("heun-eval", "Heun-KZB heat operator eigen-check");
    he->add_option("--lambda", lambda_text, "highest weight as h1,level,d");
    he->add_option("--eta", eta_text, "character values on B0,B1");
    he->add_option("--chi", chi_text, "character values on B0,B1");
    he->add_option("--z", z_text, "evaluation point z");
    he->add_option("--tau", tau_text, "evaluation point tau (Im > 0)");
    he->add_option("--tol", tol, "residual tolerance");
    add_common(he);

    std::vector<std::string> args(argv.rbegin(), argv.rend());  // CLI11 wants reversed
    try {
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;  // --help exits cleanly, anything else is usage
    }

    const std::int64_t floor = -depth;

    if (*wp) {
        auto s = wp_series(parse_theta_char(char_bits), ypow, qpow, floor);
        emit(format == "csv" ? series_to_csv(s) : series_to_json(s).dump(2), out_path);
        return 0;
    }

    if (*tc) {
        std::vector<CheckReport> reports;
        for (int i = 0; i <= 1; ++i) {
            for (int j = 0; j <= 1; ++j) {
                auto rep = equal_on_window(theta_char_series({i, j}, floor, ThetaForm::product),
                                           theta_char_series({i, j}, floor, ThetaForm::sum));
                rep.name = "theta_" + std::to_string(i) + std::to_string(j) + " sum vs product";
                reports.push_back(std::move(rep));
            }
        }
        // numeric quasi-periodicity and zero location at sample points
        std::mt19937 rng(11);
        std::uniform_real_distribution<double> re(-0.5, 0.5), im(1.0, 2.5);
        bool numeric_pass = true;
        for (int t = 0; t < 10; ++t) {
            const Complex tau{re(rng) * 0.6, im(rng)};
            const Complex z{re(rng), re(rng) * 0.3};
            const Complex base = theta_numeric(z, tau, tol);
            const Complex shifted = theta_numeric(z + 1.0, tau, tol);
            const Complex factor =
                std::exp(Complex(0, 1) * (-std::acos(-1.0)) * (tau + 2.0 * z));
            numeric_pass = numeric_pass && std::abs(shifted - base) < tol &&
                           std::abs(theta_numeric(z + tau, tau, tol) - factor * base) <
                               tol * 10 * (1.0 + std::abs(factor * base)) &&
                           std::abs(theta_numeric((1.0 + tau) / 2.0, tau, tol)) < tol;
        }
        reports.push_back({"numeric quasi-periodicity and zero location", numeric_pass,
                           numeric_pass ? "10 sample points" : "numeric check failed"});
        emit(render_reports(reports, floor, format), out_path);
        for (const auto& r : reports) {
            if (!r.pass) return 1;
        }
        return 0;
    }

    if (*den) {
        if (which != "1" && which != "2" && which != "half") {
            throw UsageError("--which must be 1, 2 or half");
        }
        TruncatedSeries s = which == "half" ? denominator_half(floor)
                            : which == "2"  ? denominator2(floor)
                                            : denominator1(floor);
        emit(format == "csv" ? series_to_csv(s) : series_to_json(s).dump(2), out_path);
        return 0;
    }

    if (*orb) {
        auto s = orbit_sum(parse_weight(lambda_text), floor);
        emit(format == "csv" ? series_to_csv(s) : series_to_json(s).dump(2), out_path);
        return 0;
    }

    if (*ch) {
        auto s = kac_weyl_character(parse_weight(lambda_text), floor);
        emit(format == "csv" ? series_to_csv(s) : series_to_json(s).dump(2), out_path);
        return 0;
    }

    if (*ra) {
        std::ifstream is(input_path);
        if (!is) throw UsageError("cannot open --input file " + input_path);
        TruncatedSeries f;
        try {
            nlohmann::json j;
            is >> j;
            f = series_from_json(j);
        } catch (const nlohmann::json::exception& e) {
            throw UsageError("malformed series JSON in " + input_path + ": " + e.what());
        }
        if (ra->count("--depth")) f.truncate_to(floor);
        RadialOperatorSpec spec{parse_character(eta_text), parse_character(chi_text), conjugated,
                                f.g2_floor()};
        auto s = apply_radial(spec, f);
        emit(format == "csv" ? series_to_csv(s) : series_to_json(s).dump(2), out_path);
        return 0;
    }

    if (*suite) {
        std::vector<std::function<CheckReport()>> jobs;
        jobs.emplace_back([floor] {
            auto reps = wp_identity_check(floor);
            for (const auto& r : reps) {
                if (!r.pass) return r;
            }
            return CheckReport{"wp doubling and shift identities", true, ""};
        });
        for (int i = 0; i <= 1; ++i) {
            for (int j = 0; j <= 1; ++j) {
                jobs.emplace_back([i, j, floor] {
                    auto rep = equal_on_window(theta_char_series({i, j}, floor, ThetaForm::product),
                                               theta_char_series({i, j}, floor, ThetaForm::sum));
                    rep.name = "theta_" + std::to_string(i) + std::to_string(j) +
                               " sum form vs product form";
                    return rep;
                });
            }
        }
        jobs.emplace_back([floor] {
            auto dh = denominator_half(floor);
            auto rep = equal_on_window(mul(dh, dh), denominator2(floor));
            rep.name = "deltah^2 = deltah_2";
            return rep;
        });
        jobs.emplace_back([floor] { return denominator_identity_check(floor); });
        jobs.emplace_back([floor] { return v_identity_check(std::max<std::int64_t>(floor, -24)); });
        const std::vector<Weight> weights = {kZeroWeight, kVarpi0, kVarpi1, Weight{2, 2, 0}, kDelta};
        struct PairSpec {
            const char* name;
            Character1D eta, chi;
        };
        const std::vector<PairSpec> pairs = {
            {"eta=chi=(0,0)", Character1D::of(0, 0), Character1D::of(0, 0)},
            {"eta=chi=(1,1)", Character1D::of(1, 1), Character1D::of(1, 1)},
            {"eta=(2,0) chi=(0,0)", Character1D::of(2, 0), Character1D::of(0, 0)},
            {"eta=(1,3) chi=(1,1)", Character1D::of(1, 3), Character1D::of(1, 1)},
        };
        const std::int64_t conj_floor = std::max<std::int64_t>(floor, -20);
        for (const auto& pr : pairs) {
            jobs.emplace_back([pr, weights, conj_floor, perturb] {
                auto reps = conjugation_identity_check(pr.eta, pr.chi, weights, conj_floor, perturb);
                for (const auto& r : reps) {
                    if (!r.pass) return r;
                }
                return CheckReport{std::string("conjugation identity, ") + pr.name, true, ""};
            });
        }
        auto reports = run_checks(std::move(jobs));
        emit(render_reports(reports, floor, format), out_path);
        for (const auto& r : reports) {
            if (!r.pass) return 1;
        }
        return 0;
    }

    if (*sph) {
        const Weight lam = parse_weight(lambda_text);
        const Character1D eta = parse_character(eta_text), chi = parse_character(chi_text);
        const int cone_depth = int((depth + 1) / 2);
        SphericalResult r = solve_spherical(lam, eta, chi, cone_depth);
        nlohmann::json j = spherical_to_json(r);
        bool pass = true;
        if (with_oracle) {
            auto psi = oracle_spherical(lam, eta, chi, std::min(cone_depth, 3));
            auto rep = equal_on_window(r.series, psi);
            j["oracle_match"] = rep.pass;
            if (!rep.pass) j["oracle_witness"] = rep.detail;
            pass = pass && rep.pass;
        }
        if (with_invariance) {
            auto rep = invariance_and_support_checks(r);
            j["invariance"] = nlohmann::json{{"pass", rep.pass}, {"detail", rep.detail}};
            pass = pass && rep.pass;
        }
        if (with_heun) {
            EvalPoint p{parse_complex(z_text), 0.0, parse_complex(tau_text)};
            auto rep = heun_kzb_numeric_check(r, 2 * cone_depth, {p}, tol);
            j["heun_check"] = nlohmann::json{{"pass", rep.pass}, {"detail", rep.detail}};
            pass = pass && rep.pass;
        }
        emit(j.dump(2), out_path);
        return pass ? 0 : 1;
    }

    if (*we) {
        const ThetaChar c = parse_theta_char(char_bits);
        EvalPoint p{parse_complex(z_text), 0.0, parse_complex(tau_text)};
        const double pi = std::acos(-1.0);
        auto series = wp_series(c, 1, 1, floor);
        auto ev = eval_series(series, p);
        const Complex formal = 4.0 * pi * pi * ev.value;
        const Complex numeric = wp_char_numeric(c, p.z, p.tau);
        const double diff = std::abs(formal - numeric);
        nlohmann::json j{{"re", formal.real()},
                         {"im", formal.imag()},
                         {"tail_bound", 4.0 * pi * pi * ev.tail_bound},
                         {"numeric_re", numeric.real()},
                         {"numeric_im", numeric.imag()},
                         {"difference", diff},
                         {"point_in_domain", ev.point_in_domain}};
        if (!ev.point_in_domain) {
            std::cerr << "warning: evaluation point outside the convergence strip D\n";
        }
        emit(j.dump(2), out_path);
        return diff < tol ? 0 : 1;
    }

    if (*he) {
        const Weight lam = parse_weight(lambda_text);
        const int cone_depth = int((depth + 1) / 2);
        SphericalResult r =
            solve_spherical(lam, parse_character(eta_text), parse_character(chi_text), cone_depth);
        EvalPoint p{parse_complex(z_text), 0.0, parse_complex(tau_text)};
        auto rep = heun_kzb_numeric_check(r, 2 * cone_depth, {p}, tol);
        nlohmann::json j{{"check", rep.name}, {"pass", rep.pass}, {"detail", rep.detail}};
        emit(j.dump(2), out_path);
        return rep.pass ? 0 : 1;
    }

    throw UsageError("no subcommand selected");
}

}  // namespace

}  // namespace casimir
