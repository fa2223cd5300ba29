#include "skewcyl/cli.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "skewcyl/report_io.hpp"

namespace skewcyl::cli {

namespace {

struct InvalidInput : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.remove_suffix(1);
    }
    return std::string(s);
}

std::optional<std::pair<double, std::optional<Rational>>> parse_real_exact(std::string_view text) {
    const std::string s = trim(text);
    if (s.empty()) {
        return std::nullopt;
    }
    if (auto q = Rational::parse(s)) {
        return std::pair{q->to_double(), q};
    }
    double v = 0.0;
    const char* first = s.data();
    if (*first == '+') {
        ++first;
    }
    auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
        return std::nullopt;
    }
    return std::pair{v, std::optional<Rational>{}};
}

double require_real(const std::string& text, const char* what) {
    auto v = parse_real(text);
    if (!v) {
        throw InvalidInput(std::string("malformed number for ") + what + ": " + text);
    }
    return *v;
}

BasePoint require_point(const std::string& text) {
    auto p = parse_point(text);
    if (!p) {
        throw InvalidInput("malformed complex number: " + text);
    }
    return *p;
}

std::pair<int, int> require_grid(const std::string& text) {
    auto g = parse_grid(text);
    if (!g) {
        throw InvalidInput("malformed grid (expected NxM): " + text);
    }
    return *g;
}

// Output sink honouring --out and the output directory variable.
class Sink {
public:
    Sink(std::ostream& fallback, const std::string& path) : fallback_(fallback) {
        if (path.empty() || path == "-") {
            return;
        }
        std::filesystem::path p(path);
        if (p.is_relative()) {
            if (const char* dir = std::getenv(kOutputDirEnv); dir != nullptr && *dir != '\0') {
                p = std::filesystem::path(dir) / p;
            }
        }
        file_.open(p, std::ios::binary | std::ios::trunc);
        if (!file_) {
            throw InvalidInput("cannot open output file: " + p.string());
        }
    }
    std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : fallback_; }

private:
    std::ostream& fallback_;
    std::ofstream file_;
};

void emit_json(Sink& sink, const json& j) {
    sink.stream() << j.dump(2) << '\n';
}

}  // namespace

std::optional<double> parse_real(std::string_view text) {
    auto r = parse_real_exact(text);
    if (!r) {
        return std::nullopt;
    }
    return r->first;
}

std::optional<BasePoint> parse_point(std::string_view text) {
    const std::string s = trim(text);
    if (s.empty()) {
        return std::nullopt;
    }
    if (auto comma = s.find(','); comma != std::string::npos) {
        auto re = parse_real_exact(std::string_view(s).substr(0, comma));
        auto im = parse_real_exact(std::string_view(s).substr(comma + 1));
        if (!re || !im) {
            return std::nullopt;
        }
        if (im->first == 0.0 && re->second) {
            return BasePoint(*re->second);
        }
        return BasePoint(Complex(re->first, im->first));
    }
    if (s.back() == 'i') {
        const std::string body = s.substr(0, s.size() - 1);
        // Split at the last sign that is not leading and not part of an exponent.
        std::size_t split = std::string::npos;
        for (std::size_t k = body.size(); k-- > 1;) {
            if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
                split = k;
                break;
            }
        }
        std::string re_text = split == std::string::npos ? "0" : body.substr(0, split);
        std::string im_text = split == std::string::npos ? body : body.substr(split);
        if (im_text.empty() || im_text == "+" || im_text == "-") {
            im_text += "1";
        }
        auto re = parse_real_exact(re_text);
        auto im = parse_real_exact(im_text);
        if (!re || !im) {
            return std::nullopt;
        }
        return BasePoint(Complex(re->first, im->first));
    }
    auto re = parse_real_exact(s);
    if (!re) {
        return std::nullopt;
    }
    if (re->second) {
        return BasePoint(*re->second);
    }
    return BasePoint(re->first);
}

std::optional<std::pair<int, int>> parse_grid(std::string_view text) {
    const std::string s = trim(text);
    auto to_int = [](std::string_view v) -> std::optional<int> {
        int out = 0;
        auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
        if (ec != std::errc() || ptr != v.data() + v.size() || out < 1) {
            return std::nullopt;
        }
        return out;
    };
    if (auto x = s.find('x'); x != std::string::npos) {
        auto a = to_int(std::string_view(s).substr(0, x));
        auto b = to_int(std::string_view(s).substr(x + 1));
        if (!a || !b) {
            return std::nullopt;
        }
        return std::pair{*a, *b};
    }
    auto a = to_int(s);
    if (!a) {
        return std::nullopt;
    }
    return std::pair{*a, *a};
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Numerical laboratory for a nonuniformizable Stein skew cylinder", "skewcyl"};
    app.require_subcommand(1);

    std::string out_path;
    std::string format = "json";
    std::string a_text = "10";
    int truncation = kDefaultTruncation;
    int workers = 1;
    std::function<int()> action;

    auto add_common = [&](CLI::App* cmd, bool with_format) {
        cmd->add_option("--out", out_path, "Output file (stdout when omitted)");
        if (with_format) {
            cmd->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
        }
    };
    auto add_A = [&](CLI::App* cmd) {
        cmd->add_option("--A", a_text, "Radius constant A")->capture_default_str();
    };
    auto add_truncation = [&](CLI::App* cmd) {
        cmd->add_option("--N-trunc", truncation, "Truncation of the potential series")->capture_default_str();
    };
    auto fibration = [&] {
        if (truncation < 1) {
            throw InvalidInput("--N-trunc must be positive");
        }
        return DiscFibration(require_real(a_text, "--A"), LogPotential(truncation));
    };

    // potential
    auto* potential = app.add_subcommand("potential", "Harmonic potential u");
    potential->require_subcommand(1);
    std::string z_text;
    int resolution = 32;
    {
        auto* eval = potential->add_subcommand("eval", "u(z), its tail bound and u_z");
        eval->add_option("--z", z_text, "Point of the disc")->required();
        add_truncation(eval);
        add_common(eval, false);
        eval->callback([&] {
            action = [&] {
                const BasePoint z = require_point(z_text);
                const LogPotential u(truncation);
                const PotentialValue v = u.eval(z.value);
                json j{{"schema_version", kSchemaVersion},
                       {"z", complex_to_json(z.value)},
                       {"N", truncation},
                       {"value", real_to_json(v.value)},
                       {"tail_bound", real_to_json(v.tail_bound)}};
                j["u_z"] = std::isfinite(v.value) ? complex_to_json(u.eval_z(z.value)) : json(nullptr);
                Sink sink(out, out_path);
                emit_json(sink, j);
                return kExitOk;
            };
        });
        auto* grid = potential->add_subcommand("grid", "u over a square grid clipped to the disc");
        grid->add_option("--res", resolution, "Nodes per side")->capture_default_str();
        add_truncation(grid);
        add_common(grid, false);
        grid->callback([&] {
            action = [&] {
                if (resolution < 1) {
                    throw InvalidInput("--res must be positive");
                }
                const LogPotential u(truncation);
                Sink sink(out, out_path);
                auto& os = sink.stream();
                os << "z_re,z_im,u\n" << std::setprecision(17);
                for (Complex z : grid_nodes({resolution, resolution, 1, kDefaultExclusion, 0.0})) {
                    const double v = u.eval(z).value;
                    os << z.real() << ',' << z.imag() << ',' << v << '\n';
                }
                return kExitOk;
            };
        });
    }

    // set
    auto* set = app.add_subcommand("set", "The obstacle K and its fibers");
    set->require_subcommand(1);
    {
        auto* fiber = set->add_subcommand("fiber", "Fiber of K over z");
        fiber->add_option("--z", z_text, "Point of the disc (p/q literals are exact)")->required();
        add_A(fiber);
        add_truncation(fiber);
        add_common(fiber, false);
        fiber->callback([&] {
            action = [&] {
                const BasePoint z = require_point(z_text);
                const FiberDescriptor f = fibration().fiber(z);
                json j = to_json(f);
                j["transversal_level"] = fibration().transversal_level();
                Sink sink(out, out_path);
                emit_json(sink, j);
                return kExitOk;
            };
        });
        auto* grid = set->add_subcommand("grid", "Fibers over a square grid clipped to the disc");
        grid->add_option("--res", resolution, "Nodes per side")->capture_default_str();
        add_A(grid);
        add_truncation(grid);
        add_common(grid, true);
        grid->callback([&] {
            action = [&] {
                if (resolution < 1) {
                    throw InvalidInput("--res must be positive");
                }
                const DiscFibration k = fibration();
                std::vector<FiberDescriptor> rows;
                for (Complex z : grid_nodes({resolution, resolution, 1, kDefaultExclusion, 0.0})) {
                    rows.push_back(k.fiber(z));
                }
                Sink sink(out, out_path);
                if (format == "csv") {
                    write_fiber_csv(sink.stream(), rows);
                } else {
                    json arr = json::array();
                    for (const auto& f : rows) {
                        arr.push_back(to_json(f));
                    }
                    emit_json(sink, {{"schema_version", kSchemaVersion}, {"A", k.A()}, {"fibers", arr}});
                }
                return kExitOk;
            };
        });
    }

    // levi
    auto* levi = app.add_subcommand("levi", "Levi-form certification of the complement");
    levi->require_subcommand(1);
    std::string grid_text = "64x64";
    int angles = 32;
    std::string epsilon_text = "1/48";
    std::string margin_text = "0.5";
    std::string min_re_text = "0";
    std::string lo_text = "-30";
    std::string hi_text = "30";
    auto grid_spec = [&] {
        const auto [nx, ny] = require_grid(grid_text);
        if (angles < 1) {
            throw InvalidInput("--angles must be positive");
        }
        return LeviGridSpec{nx, ny, angles, require_real(epsilon_text, "--epsilon"),
                            require_real(min_re_text, "--min-abs-re")};
    };
    auto add_grid = [&](CLI::App* cmd) {
        cmd->add_option("--grid", grid_text, "z-grid resolution NxM")->capture_default_str();
        cmd->add_option("--angles", angles, "Boundary angles per fiber")->capture_default_str();
        cmd->add_option("--epsilon", epsilon_text, "Exclusion strip half-width")->capture_default_str();
        cmd->add_option("--margin", margin_text, "Required minimum of H")->capture_default_str();
        cmd->add_option("--min-abs-re", min_re_text, "Skip nodes with |Re z| below this")->capture_default_str();
        cmd->add_option("--workers", workers, "Worker threads")->capture_default_str();
    };
    {
        auto* cert = levi->add_subcommand("certify", "Minimum of the tangential Levi form over a grid");
        add_A(cert);
        add_truncation(cert);
        add_grid(cert);
        add_common(cert, true);
        cert->callback([&] {
            action = [&] {
                const DiscFibration k = fibration();
                const LeviGridSpec g = grid_spec();
                const double margin = require_real(margin_text, "--margin");
                if (workers < 1) {
                    throw InvalidInput("--workers must be positive");
                }
                const LeviReport r = certify(k, g, margin, workers);
                Sink sink(out, out_path);
                if (format == "csv") {
                    write_levi_csv(sink.stream(), levi_grid_dump(k, g));
                } else {
                    emit_json(sink, to_json(r));
                }
                return r.certified ? kExitOk : kExitNegative;
            };
        });
        auto* finda = levi->add_subcommand("find-a", "Bisection for the smallest certified A");
        finda->add_option("--lo", lo_text, "Failing end of the bracket")->capture_default_str();
        finda->add_option("--hi", hi_text, "Certified end of the bracket")->capture_default_str();
        add_grid(finda);
        add_common(finda, false);
        finda->callback([&] {
            action = [&] {
                if (workers < 1) {
                    throw InvalidInput("--workers must be positive");
                }
                const MinAResult r = find_min_A(require_real(lo_text, "--lo"), require_real(hi_text, "--hi"),
                                                grid_spec(), require_real(margin_text, "--margin"), workers);
                json hist = json::array();
                for (const auto& p : r.history) {
                    hist.push_back({{"A", p.A}, {"certified", p.certified}, {"min_H", real_to_json(p.min_H)}});
                }
                Sink sink(out, out_path);
                emit_json(sink, {{"schema_version", kSchemaVersion},
                                 {"A_star", r.A_star},
                                 {"bracket", {r.lo, r.hi}},
                                 {"history", hist}});
                return kExitOk;
            };
        });
    }

    // fiber
    auto* fiber_cmd = app.add_subcommand("fiber", "Charts and log monodromy on fibers");
    fiber_cmd->require_subcommand(1);
    std::string path_text;
    std::string path_file;
    {
        auto* mono = fiber_cmd->add_subcommand("monodromy", "Continuation of log w around a closed loop");
        mono->add_option("--path", path_text, "JSON array of [re, im] pairs");
        mono->add_option("--path-file", path_file, "File holding the JSON path");
        mono->add_option("--z", z_text, "Base point: also classify the loop in the fiber over z");
        add_A(mono);
        add_truncation(mono);
        add_common(mono, false);
        mono->callback([&] {
            action = [&] {
                std::string text = path_text;
                if (!path_file.empty()) {
                    std::ifstream in(path_file);
                    if (!in) {
                        throw InvalidInput("cannot read path file: " + path_file);
                    }
                    std::stringstream ss;
                    ss << in.rdbuf();
                    text = ss.str();
                }
                if (text.empty()) {
                    throw InvalidInput("one of --path or --path-file is required");
                }
                const PathPolyline loop = path_from_json(json::parse(text));
                json j = to_json(monodromy(loop));
                if (!z_text.empty()) {
                    const FiberChart chart(fibration().fiber(require_point(z_text)));
                    const LogChartVerdict v = analyze_log_chart(chart, loop);
                    j["fiber"] = to_json(chart.descriptor());
                    j["obstacle_winding"] = v.obstacle_winding;
                    j["loop_in_fiber"] = v.loop_in_fiber;
                    j["contractible_in_fiber"] = v.contractible_in_fiber;
                    j["branch_point_witness"] = v.branch_point_witness;
                }
                Sink sink(out, out_path);
                emit_json(sink, j);
                return kExitOk;
            };
        });
    }

    // schwarzian
    auto* schw = app.add_subcommand("schwarzian", "Schwarzian derivative of built-in functions");
    schw->require_subcommand(1);
    std::string function_name = "exp";
    std::string p_text = "1";
    bool use_fd = false;
    bool log_chart = false;
    {
        auto* eval = schw->add_subcommand("eval", "S f at p");
        eval->add_option("--function", function_name, "exp, log, square or mobius (z+2)/(3z+1)")
            ->check(CLI::IsMember({"exp", "log", "square", "mobius"}));
        eval->add_option("--p", p_text, "Evaluation point")->capture_default_str();
        eval->add_flag("--fd", use_fd, "Use finite-difference jets");
        eval->add_flag("--log-chart", log_chart, "Report S of f ∘ exp at ln p instead");
        add_common(eval, false);
        eval->callback([&] {
            action = [&] {
                const Complex p = require_point(p_text).value;
                const Mobius m(1.0, 2.0, 3.0, 1.0);
                HoloFn f;
                Jet3 jet;
                if (function_name == "exp") {
                    f = [](Complex x) { return std::exp(x); };
                    jet = exp_jet(p);
                } else if (function_name == "log") {
                    f = [](Complex x) { return std::log(x); };
                    jet = log_jet(p);
                } else if (function_name == "square") {
                    f = [](Complex x) { return x * x; };
                    jet = {p, p * p, 2.0 * p, 2.0, 0.0};
                } else {
                    f = [m](Complex x) { return m(x); };
                    jet = m.jet(p);
                }
                json j{{"schema_version", kSchemaVersion}, {"function", function_name}, {"p", complex_to_json(p)}};
                if (use_fd) {
                    const FdSchwarzian s = schwarzian_fd(f, p);
                    j["method"] = "finite-difference";
                    j["error_estimate"] = s.error;
                    const Complex v = log_chart ? p * p * s.value - 0.5 : s.value;
                    j["value"] = complex_to_json(v);
                } else {
                    j["method"] = "jet";
                    j["value"] = complex_to_json(log_chart ? schwarzian_in_log_chart(jet) : schwarzian(jet));
                }
                j["chart"] = log_chart ? "log" : "identity";
                Sink sink(out, out_path);
                emit_json(sink, j);
                return kExitOk;
            };
        });
    }

    // rigidity
    auto* rig = app.add_subcommand("rigidity", "Identity-theorem bounds and the certificate");
    rig->require_subcommand(1);
    int n_points = 25;
    std::string sup_text = "1";
    std::string family_name = "moebius-in-log";
    std::string tol_zero_text = "1e-9";
    std::string tol_cr_text = "1e-6";
    {
        auto* bound = rig->add_subcommand("bound", "Blaschke bound and propagated vanishing");
        bound->add_option("--z", z_text, "Target point")->required();
        bound->add_option("--N", n_points, "Number of E+ points a_n used")->capture_default_str();
        bound->add_option("--sup", sup_text, "Sup bound M of the vanishing function")->capture_default_str();
        add_common(bound, false);
        bound->callback([&] {
            action = [&] {
                const Complex z = require_point(z_text).value;
                const double sup = require_real(sup_text, "--sup");
                Sink sink(out, out_path);
                emit_json(sink, {{"schema_version", kSchemaVersion},
                                 {"z", complex_to_json(z)},
                                 {"N", n_points},
                                 {"blaschke_bound", blaschke_bound(z, n_points)},
                                 {"propagated", vanishing_propagation(sup, n_points, z)}});
                return kExitOk;
            };
        });
        auto* cert = rig->add_subcommand("certificate", "Nonuniformizability certificate for a canned family");
        cert->add_option("--family", family_name, "moebius-in-log, branch-adapted, or <name>+conj")
            ->capture_default_str();
        cert->add_option("--N", n_points, "Number of E+ samples a_n")->capture_default_str();
        cert->add_option("--tol-zero", tol_zero_text, "Vanishing tolerance on E+")->capture_default_str();
        cert->add_option("--tol-cr", tol_cr_text, "Holomorphy residual tolerance")->capture_default_str();
        add_A(cert);
        add_common(cert, false);
        cert->callback([&] {
            action = [&] {
                CandidateFamily fam;
                try {
                    fam = family_by_name(family_name);
                } catch (const std::invalid_argument& e) {
                    throw InvalidInput(e.what());
                }
                CertificateConfig cfg;
                cfg.A = require_real(a_text, "--A");
                cfg.N = n_points;
                cfg.tol_zero = require_real(tol_zero_text, "--tol-zero");
                cfg.tol_cr = require_real(tol_cr_text, "--tol-cr");
                const CertificateReport r = run_certificate(fam, cfg);
                Sink sink(out, out_path);
                emit_json(sink, to_json(r));
                return r.verdict == Verdict::inconclusive ? kExitNegative : kExitOk;
            };
        });
    }

    std::vector<std::string> argv_store;
    argv_store.reserve(args.size() + 1);
    argv_store.emplace_back("skewcyl");
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& a : argv_store) {
        argv.push_back(a.c_str());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitInvalid;
    }
    if (!action) {
        err << "error: no subcommand selected\n";
        return kExitInvalid;
    }
    try {
        return action();
    } catch (const std::exception& e) {
        // Bad literals, domain violations, malformed JSON and failed numerical checks alike.
        err << "error: " << e.what() << '\n';
        return kExitInvalid;
    }
}

}  // namespace skewcyl::cli
