// rotorlab: command-line front end over the rotor library.
//
// Subcommands: otw (over-twist patterns), pat (pattern analysis), psi
// (truncation infimum), lift (circle lifts), stair (leading staircases),
// sweep (parameter scans), tract (tract geometry), verify (self checks).
// Usage problems exit 2; computational failures exit 1 and leave a JSON
// object {"error": code, "detail": text} on stderr. All values cross the
// boundary as exact "num/den" strings unless --approx adds decimals.

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "CLI11.hpp"
#include "json.hpp"

#include "rotor/circlelift.hpp"
#include "rotor/error.hpp"
#include "rotor/horseshoe.hpp"
#include "rotor/overtwist.hpp"
#include "rotor/pattern.hpp"
#include "rotor/plinear.hpp"
#include "rotor/tracts.hpp"

using rotor::Int;
using rotor::Rat;
using rotor::RotorError;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw RotorError("domain error", "cannot read '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw RotorError("domain error", "cannot write '" + path + "'");
    out << text;
    if (!out) throw RotorError("domain error", "failed writing '" + path + "'");
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty())
        std::cout << text << (text.empty() || text.back() == '\n' ? "" : "\n");
    else
        write_file(out_path, text);
}

std::pair<int, int> parse_grid(const std::string& s) {
    size_t x = s.find('x');
    if (x == std::string::npos) throw RotorError("parse error", "grid must look like 50x50");
    try {
        return {std::stoi(s.substr(0, x)), std::stoi(s.substr(x + 1))};
    } catch (const std::exception&) {
        throw RotorError("parse error", "bad grid '" + s + "'");
    }
}

// Pattern input shared by the pat subcommands: either a comma-separated
// image list on the command line or a JSON file.
rotor::CyclicPattern pattern_input(const std::string& csv, const std::string& path) {
    if (!path.empty()) {
        rotor::CyclicPattern p = rotor::CyclicPattern::from_json(read_file(path));
        p.validate();
        return p;
    }
    rotor::CyclicPattern p;
    std::istringstream in(csv);
    std::string tok;
    while (std::getline(in, tok, ',')) {
        try {
            p.image.push_back(std::stoi(tok));
        } catch (const std::exception&) {
            throw RotorError("parse error", "bad image entry '" + tok + "'");
        }
    }
    p.q = static_cast<int>(p.image.size());
    p.validate();
    return p;
}

std::string error_detail(const RotorError& e) {
    std::string what = e.what();
    std::string prefix = e.code() + ": ";
    return what.rfind(prefix, 0) == 0 ? what.substr(prefix.size()) : what;
}

nlohmann::json rot_json(const rotor::RotResult& r) {
    return {{"exact", r.exact},
            {"value", r.exact ? r.value.str() : ""},
            {"lo", r.lo.str()},
            {"hi", r.hi.str()}};
}

// One named check of the verify run; prints ok/FAIL and counts failures.
struct Verifier {
    int failures = 0;

    void check(const std::string& name, const std::function<bool()>& body) {
        std::string note;
        bool ok = false;
        try {
            ok = body();
        } catch (const std::exception& e) {
            note = e.what();
        }
        if (ok) {
            std::cout << "ok " << name << "\n";
        } else {
            std::cout << "FAIL " << name << (note.empty() ? "" : ": " + note) << "\n";
            ++failures;
        }
    }
};

int run_verify() {
    using namespace rotor;
    Verifier v;
    Rat half(Int(1), Int(2));

    v.check("figure permutation", [] {
        CyclicPattern g = overtwist_permutation({3, 11, 3});
        OverRotationPair pr = over_rotation_pair(g);
        return g.image == std::vector<int>{4, 5, 6, 11, 10, 9, 3, 2, 1, 7, 8} &&
               pr.p == 3 && pr.q == 11;
    });

    v.check("over-twist family", [&] {
        for (long long q = 3; q <= 9; ++q)
            for (long long p = 1; 2 * p < q; ++p) {
                if (std::gcd(p, q) != 1) continue;
                for (long long r = 0; r <= q - 2 * p; ++r) {
                    CyclicPattern g = overtwist_permutation({p, q, r});
                    auto [lo, hi] = rotation_interval_of_pattern(g);
                    if (!is_overtwist(g)) return false;
                    if (lo != Rat(Int(p), Int(q)) || hi != half) return false;
                }
            }
        return true;
    });

    v.check("orbit realizations", [] {
        std::vector<Rat> a = realize_cycle_in_h2(overtwist_permutation({1, 3, 0}));
        std::vector<Rat> b = realize_cycle_in_h2(overtwist_permutation({1, 3, 1}));
        if (a != std::vector<Rat>{Rat(Int(5), Int(13)), Rat(Int(7), Int(13)),
                                  Rat(Int(11), Int(13))})
            return false;
        if (b != std::vector<Rat>{Rat(Int(2), Int(13)), Rat(Int(6), Int(13)),
                                  Rat(Int(8), Int(13))})
            return false;
        for (long long q = 3; q <= 9; ++q)
            for (long long p = 1; 2 * p < q; ++p) {
                if (std::gcd(p, q) != 1) continue;
                for (long long r = 0; r <= q - 2 * p; ++r) {
                    CyclicPattern g = overtwist_permutation({p, q, r});
                    std::vector<Rat> xs = realize_cycle_in_h2(g);
                    for (int j = 1; j <= g.q; ++j)
                        if (h2(xs[static_cast<size_t>(j) - 1]) !=
                            xs[static_cast<size_t>(g.at(j)) - 1])
                            return false;
                }
            }
        return true;
    });

    v.check("staircase mirror", [] {
        for (long long q = 3; q <= 9; ++q)
            for (long long p = 1; 2 * p < q; ++p) {
                if (std::gcd(p, q) != 1) continue;
                Staircase z = leading_set(p, q);
                std::vector<Rat> mirrored = z.rises();
                std::reverse(mirrored.begin(), mirrored.end());
                if (z.treads() != mirrored) return false;
                if (z.b.front() != Rat(1) - z.a.back()) return false;
                for (auto& [cx, cy] : z.corners())
                    if (!z.contains(cx, cy)) return false;
            }
        return true;
    });

    v.check("staircase infima", [] {
        for (auto [p, q] : std::vector<std::pair<long long, long long>>{
                 {1, 3}, {1, 4}, {2, 5}}) {
            Staircase z = leading_set(p, q);
            for (size_t r = 0; r < z.a.size(); ++r) {
                PsiResult res = psi(TruncationParams{z.a[r], z.b[r]});
                if (!res.converged || res.value != Rat(Int(p), Int(q))) return false;
            }
        }
        return true;
    });

    v.check("infimum anchors", [&] {
        PsiResult full = psi({Rat(1), Rat(0)});
        PsiResult corner = psi({Rat(Int(11), Int(13)), Rat(Int(5), Int(13))});
        return full.converged && full.value == Rat(0) &&
               psi({half, Rat(Int(1), Int(3))}).value == half &&
               psi({Rat(Int(3), Int(4)), half}).value == half &&
               corner.converged && corner.value == Rat(Int(1), Int(3));
    });

    v.check("enumeration lower bound", [] {
        for (int i = 0; i <= 8; ++i)
            for (int j = 0; j <= 8; ++j) {
                TruncationParams par{Rat(Int(8 + i), Int(16)), Rat(Int(j), Int(16))};
                PsiResult exact = psi(par);
                PsiResult est = psi_enum(par, 12, 400000000, false);
                if (!exact.converged || est.value < exact.value) return false;
            }
        return true;
    });

    v.check("sweep determinism", [] {
        SweepSpec spec{7, 7, 12};
        return sweep_serial(spec).to_csv() == sweep_parallel(spec).to_csv();
    });

    v.check("hull bracketing", [&] {
        Lift f{{Rat(0), Rat(Int(1), Int(4)), half, Rat(1)},
               {Rat(Int(1), Int(4)), Rat(1), half, Rat(Int(5), Int(4))}};
        Lift lo = lower_monotone_map(f), hi = upper_monotone_map(f);
        for (int k = 0; k <= 16; ++k) {
            Rat x(Int(k), Int(16));
            if (lo.eval(x) > f.eval(x) || f.eval(x) > hi.eval(x)) return false;
        }
        RotInterval ri = rotation_interval(f, 1000);
        if (!ri.lower.exact || ri.lower.value != Rat(0)) return false;
        if (!ri.upper.exact || ri.upper.value != half) return false;
        Lift rigid{{Rat(0), Rat(1)}, {Rat(Int(2), Int(5)), Rat(Int(7), Int(5))}};
        RotResult rr = rotation_number(rigid, 1000);
        return rr.exact && rr.value == Rat(Int(2), Int(5));
    });

    v.check("pair forcing", [] {
        if (!orp_forces({2, 6}, {1, 3}) || orp_forces({1, 3}, {2, 6})) return false;
        std::vector<CyclicPattern> forced =
            forced_cycles(overtwist_permutation({1, 3, 1}), 3);
        for (const CyclicPattern& c : forced)
            if (c.q == 2 && c.image == std::vector<int>{2, 1}) return true;
        return false;
    });

    if (v.failures == 0) {
        std::cout << "verify: all checks passed\n";
        return 0;
    }
    std::cout << "verify: " << v.failures << " check(s) failed\n";
    return 1;
}

} // namespace

int main(int argc, char** argv) {
#ifdef _OPENMP
    if (const char* env = std::getenv("ROTORLAB_THREADS")) {
        int n = std::atoi(env);
        if (n > 0) omp_set_num_threads(n);
    }
#endif

    CLI::App app{"exact over-rotation combinatorics of interval maps"};
    app.set_config("--config", "", "key=value file; explicit flags win");
    app.require_subcommand(1);

    int cap = 16;
    std::string tol_s = "1/1000";
    bool approx = false;
    app.add_option("--cap", cap, "cycle period cap")->capture_default_str();
    app.add_option("--tol", tol_s, "retraction tolerance fraction")
        ->capture_default_str();
    app.add_flag("--approx", approx, "append decimal approximations");

    CLI::Validator frac_ok(
        [](std::string& s) {
            try {
                Rat::parse(s);
            } catch (const RotorError& e) {
                return std::string(e.what());
            }
            return std::string();
        },
        "FRACTION");

    int exit_code = 0;

    // otw gen p q r
    auto* otw = app.add_subcommand("otw", "over-twist pattern generation");
    otw->require_subcommand(1)->fallthrough();
    auto* gen = otw->add_subcommand("gen", "emit the pattern of a shift index");
    gen->fallthrough();
    long long gen_p = 0, gen_q = 0, gen_r = 0;
    gen->add_option("p", gen_p, "numerator")->required();
    gen->add_option("q", gen_q, "period")->required();
    gen->add_option("r", gen_r, "shift index")->required();
    gen->callback([&] {
        std::cout << rotor::overtwist_permutation({gen_p, gen_q, gen_r}).to_json()
                  << "\n";
    });

    // pat interval | otwist | forced
    auto* pat = app.add_subcommand("pat", "analyze a cyclic pattern");
    pat->require_subcommand(1)->fallthrough();
    std::string pat_csv, pat_in;
    auto add_pattern_input = [&](CLI::App* sub) {
        sub->fallthrough();
        sub->add_option("image", pat_csv, "comma-separated image list");
        sub->add_option("--in", pat_in, "pattern JSON file");
    };
    auto need_pattern = [&]() {
        if (pat_csv.empty() && pat_in.empty())
            throw CLI::RequiredError("pattern (positional image or --in)");
        return pattern_input(pat_csv, pat_in);
    };
    auto* pat_interval =
        pat->add_subcommand("interval", "over-rotation interval of the pattern");
    add_pattern_input(pat_interval);
    pat_interval->callback([&] {
        auto [lo, hi] = rotor::rotation_interval_of_pattern(need_pattern());
        nlohmann::json j{{"min", lo.str()}, {"max", hi.str()}};
        if (approx) j["min_approx"] = lo.approx();
        std::cout << j.dump() << "\n";
    });
    auto* pat_otw = pat->add_subcommand("otwist", "does the pattern force anything below itself");
    add_pattern_input(pat_otw);
    pat_otw->callback([&] {
        rotor::CyclicPattern p = need_pattern();
        rotor::OverRotationPair pr = rotor::over_rotation_pair(p);
        nlohmann::json j{{"overtwist", rotor::is_overtwist(p)},
                         {"pair", {pr.p, pr.q}},
                         {"rho", rotor::over_rotation_number(p).str()}};
        std::cout << j.dump() << "\n";
    });
    auto* pat_forced = pat->add_subcommand("forced", "patterns of forced cycles up to the cap");
    add_pattern_input(pat_forced);
    pat_forced->callback([&] {
        nlohmann::json arr = nlohmann::json::array();
        for (const rotor::CyclicPattern& c : rotor::forced_cycles(need_pattern(), cap))
            arr.push_back(nlohmann::json::parse(c.to_json()));
        std::cout << arr.dump() << "\n";
    });

    // psi --alpha a/b --beta c/d
    auto* psi_cmd = app.add_subcommand("psi", "left endpoint of the over-rotation interval");
    psi_cmd->fallthrough();
    std::string psi_alpha, psi_beta;
    bool psi_enum_only = false;
    psi_cmd->add_option("--alpha", psi_alpha, "top plateau height")
        ->required()
        ->check(frac_ok);
    psi_cmd->add_option("--beta", psi_beta, "bottom plateau height")
        ->required()
        ->check(frac_ok);
    psi_cmd->add_flag("--enum", psi_enum_only, "cycle enumeration route only");
    psi_cmd->callback([&] {
        rotor::TruncationParams par{Rat::parse(psi_alpha), Rat::parse(psi_beta)};
        auto eval = [&](int c) {
            return psi_enum_only ? rotor::psi_enum(par, c) : rotor::psi(par, c);
        };
        rotor::PsiResult r = eval(cap);
        if (!r.converged) r = eval(2 * cap); // one doubling retry
        std::cout << r.value.str() << (r.converged ? " converged" : " unconverged");
        if (approx) std::cout << " ~" << r.value.approx();
        std::cout << "\n";
    });

    // lift rot | hull
    auto* lift = app.add_subcommand("lift", "degree-one circle lifts");
    lift->require_subcommand(1)->fallthrough();
    std::string lift_spec;
    long long lift_precision = 1000;
    auto* lift_rot = lift->add_subcommand("rot", "rotation interval of a lift");
    lift_rot->fallthrough();
    lift_rot->add_option("--spec", lift_spec, "lift JSON file")->required();
    lift_rot->add_option("--precision", lift_precision, "enclosure denominator scale")
        ->capture_default_str();
    lift_rot->callback([&] {
        rotor::Lift f = rotor::Lift::from_json(read_file(lift_spec));
        rotor::RotInterval ri = rotor::rotation_interval(f, lift_precision);
        nlohmann::json j{{"lower", rot_json(ri.lower)}, {"upper", rot_json(ri.upper)}};
        std::cout << j.dump() << "\n";
    });
    bool lift_upper = false;
    auto* lift_hull = lift->add_subcommand("hull", "monotone hull of a lift");
    lift_hull->fallthrough();
    lift_hull->add_option("--spec", lift_spec, "lift JSON file")->required();
    lift_hull->add_flag("--upper", lift_upper, "upper hull instead of lower");
    lift_hull->callback([&] {
        rotor::Lift f = rotor::Lift::from_json(read_file(lift_spec));
        rotor::Lift h = lift_upper ? rotor::upper_monotone_map(f)
                                   : rotor::lower_monotone_map(f);
        std::cout << h.to_json() << "\n";
    });

    // stair p q
    auto* stair = app.add_subcommand("stair", "leading staircase of a fraction");
    stair->fallthrough();
    long long stair_p = 0, stair_q = 0;
    std::string stair_svg, stair_out;
    stair->add_option("p", stair_p, "numerator")->required();
    stair->add_option("q", stair_q, "denominator")->required();
    stair->add_option("--svg", stair_svg, "also write an SVG polyline here");
    stair->add_option("--out", stair_out, "write the JSON here instead of stdout");
    stair->callback([&] {
        rotor::Staircase z = rotor::leading_set(stair_p, stair_q);
        if (!stair_svg.empty()) write_file(stair_svg, z.to_svg());
        emit(z.to_json(), stair_out);
    });

    // sweep --grid MxN
    auto* sweep = app.add_subcommand("sweep", "scan the parameter rectangle");
    sweep->fallthrough();
    std::string sweep_grid = "50x50", sweep_out;
    bool sweep_serial_flag = false;
    sweep->add_option("--grid", sweep_grid, "alpha x beta step counts")
        ->capture_default_str();
    sweep->add_option("--out", sweep_out, "write the CSV here instead of stdout");
    sweep->add_flag("--serial", sweep_serial_flag, "reference serial kernel");
    sweep->callback([&] {
        auto [m, n] = parse_grid(sweep_grid);
        rotor::SweepSpec spec{m, n, cap};
        rotor::SweepGrid g =
            sweep_serial_flag ? rotor::sweep_serial(spec) : rotor::sweep_parallel(spec);
        emit(g.to_csv(), sweep_out);
    });

    // tract classify | retract | shift | level
    auto* tract = app.add_subcommand("tract", "iso-over-rotation tract geometry");
    tract->require_subcommand(1)->fallthrough();
    long long tr_p = 0, tr_q = 0;
    std::string tr_alpha, tr_beta;
    auto add_tract_point = [&](CLI::App* sub) {
        sub->fallthrough();
        sub->add_option("p", tr_p, "numerator")->required();
        sub->add_option("q", tr_q, "denominator")->required();
        sub->add_option("--alpha", tr_alpha, "top plateau height")
            ->required()
            ->check(frac_ok);
        sub->add_option("--beta", tr_beta, "bottom plateau height")
            ->required()
            ->check(frac_ok);
    };
    auto* tr_classify = tract->add_subcommand(
        "classify", "which side of the staircase, by value and by geometry");
    add_tract_point(tr_classify);
    tr_classify->callback([&] {
        Rat alpha = Rat::parse(tr_alpha), beta = Rat::parse(tr_beta);
        rotor::TruncationParams par{alpha, beta};
        par.validate();
        rotor::Staircase z = rotor::leading_set(tr_p, tr_q);
        Rat target = Rat(Int(tr_p), Int(tr_q));
        rotor::PsiResult r = rotor::psi(par, cap);
        std::string chain_side = z.contains(alpha, beta) ? "on"
                                 : z.below(alpha, beta)  ? "below"
                                                         : "above";
        std::string value_side = !r.converged        ? "unknown"
                                 : r.value > target  ? "above"
                                 : r.value == target ? "tract"
                                                     : "below";
        bool agrees = r.converged &&
                      (r.value >= target) == (chain_side != "below");
        nlohmann::json j{{"psi", r.value.str()},     {"converged", r.converged},
                         {"chain_side", chain_side}, {"value_side", value_side},
                         {"agrees", agrees}};
        if (approx) j["psi_approx"] = r.value.approx();
        std::cout << j.dump() << "\n";
    });
    auto* tr_retract = tract->add_subcommand(
        "retract", "slide toward the corner onto the staircase, certified");
    add_tract_point(tr_retract);
    tr_retract->callback([&] {
        auto [x, y] = rotor::kappa_witness(
            {Rat::parse(tr_alpha), Rat::parse(tr_beta)}, tr_p, tr_q,
            Rat::parse(tol_s));
        nlohmann::json j{{"alpha", x.str()}, {"beta", y.str()}};
        std::cout << j.dump() << "\n";
    });
    auto* tr_shift = tract->add_subcommand(
        "shift", "smallest axis-aligned move onto the staircase, certified");
    add_tract_point(tr_shift);
    tr_shift->callback([&] {
        rotor::AxisShift s = rotor::axis_shift(
            {Rat::parse(tr_alpha), Rat::parse(tr_beta)}, tr_p, tr_q);
        std::string dir = s.dy == Rat(0) ? "none" : s.up ? "up" : "down";
        nlohmann::json j{{"dx", s.dx.str()}, {"dy", s.dy.str()}, {"vertical", dir}};
        std::cout << j.dump() << "\n";
    });
    auto* tr_level = tract->add_subcommand(
        "level", "is a sweep level set connected under 8-neighbour adjacency");
    tr_level->fallthrough();
    std::string lv_grid = "50x50", lv_value, lv_tol = "0/1";
    bool lv_serial = false;
    tr_level->add_option("--grid", lv_grid, "alpha x beta step counts")
        ->capture_default_str();
    tr_level->add_option("--value", lv_value, "level set center")
        ->required()
        ->check(frac_ok);
    tr_level->add_option("--band", lv_tol, "half-width of the level band")
        ->capture_default_str()
        ->check(frac_ok);
    tr_level->add_flag("--serial", lv_serial, "reference serial kernel");
    tr_level->callback([&] {
        auto [m, n] = parse_grid(lv_grid);
        rotor::SweepSpec spec{m, n, cap};
        rotor::SweepGrid g =
            lv_serial ? rotor::sweep_serial(spec) : rotor::sweep_parallel(spec);
        Rat value = Rat::parse(lv_value), band = Rat::parse(lv_tol);
        bool connected = rotor::level_set_connected(g, value, band);
        long long members = 0;
        for (const rotor::SweepCell& c : g.cells) {
            Rat d = c.value - value;
            if ((d < Rat(0) ? Rat(0) - d : d) <= band) ++members;
        }
        nlohmann::json j{{"connected", connected}, {"cells", members}};
        std::cout << j.dump() << "\n";
    });

    // verify
    auto* verify = app.add_subcommand("verify", "run the built-in consistency checks");
    verify->fallthrough();
    verify->callback([&] { exit_code = run_verify(); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const RotorError& e) {
        nlohmann::json j{{"error", e.code()}, {"detail", error_detail(e)}};
        std::cerr << j.dump() << "\n";
        return 1;
    }
    return exit_code;
}
