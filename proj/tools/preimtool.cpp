#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "preim/errors.hpp"
#include "preim/expr.hpp"
#include "preim/harness.hpp"
#include "preim/infinity.hpp"

using namespace preim;
using nlohmann::ordered_json;

namespace {

ProjPoint parse_point(const std::string& text) {
    if (text == "inf" || text == "infinity" || text == "oo") return ProjPoint::infinity();
    try {
        Rational v(text, 10);
        v.canonicalize();
        return ProjPoint(v);
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("bad rational: " + text);
    }
}

std::string point_str(const ProjPoint& P) {
    return P.is_infinity() ? "inf" : P.value().get_str();
}

std::string poly_str(const Poly& p, const std::string& var) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (long i = p.degree(); i >= 0; --i) {
        Rational c = p.coeff(static_cast<std::size_t>(i));
        if (c == 0) continue;
        if (!first) os << (c > 0 ? " + " : " - ");
        if (first && c < 0) os << "-";
        Rational mag = abs(c);
        if (mag != 1 || i == 0) os << mag.get_str();
        if (i > 0) {
            if (mag != 1) os << "*";
            os << var;
            if (i > 1) os << "^" << i;
        }
        first = false;
    }
    return os.str();
}

std::string bipoly_str(const BiPoly& p) {
    auto cols = p.x_coefficients();
    if (cols.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (long i = static_cast<long>(cols.size()) - 1; i >= 0; --i) {
        const Poly& c = cols[static_cast<std::size_t>(i)];
        if (c.is_zero()) continue;
        if (!first) os << " + ";
        if (i == 0) {
            os << "(" << poly_str(c, "t") << ")";
        } else {
            os << "(" << poly_str(c, "t") << ")*x";
            if (i > 1) os << "^" << i;
        }
        first = false;
    }
    return first ? "0" : os.str();
}

struct FamilyArgs {
    std::string kind, a = "0", b = "0", c = "0";

    QuadFamily build() const {
        if (kind != "polyquad" && kind != "ratquad")
            throw std::invalid_argument("--family must be polyquad or ratquad");
        return QuadFamily(kind == "polyquad" ? FamilyKind::PolyQuad : FamilyKind::RatQuad,
                          parse_poly_t(a), parse_poly_t(b), parse_poly_t(c));
    }
};

void add_family_flags(CLI::App* cmd, FamilyArgs& args) {
    cmd->add_option("--family", args.kind, "polyquad: x^2+b(t)x+c(t); ratquad: (x^2+b(t)x)/(c(t)x+1)");
    cmd->add_option("--a", args.a, "target a(t)");
    cmd->add_option("--b", args.b, "coefficient b(t)");
    cmd->add_option("--c", args.c, "coefficient c(t)");
}

void require(const CLI::App* cmd, const std::string& name, bool config_supplied) {
    if (cmd->count("--" + name) == 0 && !config_supplied)
        throw CLI::RequiredError("--" + name);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact rational preimage workbench for quadratic families over Q"};
    app.require_subcommand(1);

    std::string config_path;
    app.add_option("--config", config_path, "JSON file supplying any flag; flags override");

    struct {
        std::string map, target = "0", point = "0", out;
        double eps = 1e-6;
        unsigned level = 1;
        std::optional<long> stable_upto, s_cap;
        long height_cap = 10, d = 2, s = 1;
        int workers = 1;
        bool json = false;
        std::string suite;
        FamilyArgs fam;
    } opt;

    auto* preim_cmd = app.add_subcommand("preim", "rational iterated preimages of a point");
    preim_cmd->add_option("--map", opt.map, "rational map in x, e.g. \"(x^2-1)/1\"");
    preim_cmd->add_option("--target", opt.target, "rational or inf");
    preim_cmd->add_flag("--json", opt.json);

    auto* orbit_cmd = app.add_subcommand("orbit", "forward orbit classification");
    orbit_cmd->add_option("--map", opt.map);
    orbit_cmd->add_option("--point", opt.point, "rational or inf");

    auto* height_cmd = app.add_subcommand("height", "canonical height interval");
    height_cmd->add_option("--map", opt.map);
    height_cmd->add_option("--point", opt.point);
    height_cmd->add_option("--eps", opt.eps, "interval width bound");

    auto* curve_cmd = app.add_subcommand("curve", "preimage curve and its components");
    add_family_flags(curve_cmd, opt.fam);
    curve_cmd->add_option("--level", opt.level, "preimage depth N");
    curve_cmd->add_option("--stable-upto", opt.stable_upto,
                          "enumerate distinct components of degree <= this bound instead");

    auto* places_cmd = app.add_subcommand("places", "places at infinity per component");
    add_family_flags(places_cmd, opt.fam);
    places_cmd->add_option("--level", opt.level);
    places_cmd->add_flag("--json", opt.json);

    auto* sweep_cmd = app.add_subcommand("sweep", "preimage counts over a parameter grid");
    add_family_flags(sweep_cmd, opt.fam);
    sweep_cmd->add_option("--height-cap", opt.height_cap, "multiplicative height bound on t");
    sweep_cmd->add_option("--s-cap", opt.s_cap, "bound on denominator prime count of t");
    sweep_cmd->add_option("--workers", opt.workers);
    sweep_cmd->add_option("--out", opt.out, "CSV output path");

    auto* bounds_cmd = app.add_subcommand("bounds", "effective constants from the uniformity bounds");
    bounds_cmd->add_option("--d", opt.d, "map degree");
    bounds_cmd->add_option("--s", opt.s, "number of finite places in S");

    auto* check_cmd = app.add_subcommand("check", "built-in verification suites");
    check_cmd->add_option("--suite", opt.suite, "power-collapse | swap | counting-bounds");

    for (auto* sc : {preim_cmd, orbit_cmd, height_cmd, curve_cmd, places_cmd, sweep_cmd,
                     bounds_cmd, check_cmd})
        sc->fallthrough();  // lets --config appear after the subcommand

    // config file fills anything the command line leaves out
    ordered_json config;
    for (int i = 1; i + 1 < argc; ++i)
        if (std::string(argv[i]) == "--config") config_path = argv[i + 1];
    if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) {
            std::cerr << "cannot read config " << config_path << "\n";
            return 1;
        }
        in >> config;
    }
    auto cfg_str = [&](const char* key, std::string& slot) {
        if (config.contains(key)) slot = config[key].get<std::string>();
    };
    cfg_str("map", opt.map);
    cfg_str("target", opt.target);
    cfg_str("point", opt.point);
    cfg_str("out", opt.out);
    cfg_str("suite", opt.suite);
    cfg_str("family", opt.fam.kind);
    cfg_str("a", opt.fam.a);
    cfg_str("b", opt.fam.b);
    cfg_str("c", opt.fam.c);
    if (config.contains("eps")) opt.eps = config["eps"].get<double>();
    if (config.contains("level")) opt.level = config["level"].get<unsigned>();
    if (config.contains("stable-upto")) opt.stable_upto = config["stable-upto"].get<long>();
    if (config.contains("s-cap")) opt.s_cap = config["s-cap"].get<long>();
    if (config.contains("height-cap")) opt.height_cap = config["height-cap"].get<long>();
    if (config.contains("d")) opt.d = config["d"].get<long>();
    if (config.contains("s")) opt.s = config["s"].get<long>();
    if (config.contains("workers")) opt.workers = config["workers"].get<int>();
    if (config.contains("json")) opt.json = config["json"].get<bool>();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*preim_cmd) {
            require(preim_cmd, "map", config.contains("map"));
            RatMap phi = parse_map(opt.map);
            PreimageTree tree = preimage_set(phi, parse_point(opt.target));
            if (opt.json) {
                ordered_json j;
                j["target"] = point_str(tree.root);
                j["count"] = tree.preim_count();
                j["max_depth"] = tree.max_depth;
                auto pts = ordered_json::array();
                for (std::size_t i = 1; i < tree.nodes.size(); ++i)
                    pts.push_back({{"point", point_str(tree.nodes[i].point)},
                                   {"depth", tree.nodes[i].depth}});
                j["points"] = std::move(pts);
                j["root_rediscovered"] = tree.root_rediscovered;
                std::cout << j.dump(2) << "\n";
            } else {
                std::cout << "|Preim| = " << tree.preim_count() << " (max depth "
                          << tree.max_depth << ")\n";
                for (std::size_t i = 1; i < tree.nodes.size(); ++i)
                    std::cout << "  depth " << tree.nodes[i].depth << ": "
                              << point_str(tree.nodes[i].point) << "\n";
            }
        } else if (*orbit_cmd) {
            require(orbit_cmd, "map", config.contains("map"));
            OrbitResult res = is_preperiodic(parse_map(opt.map), parse_point(opt.point));
            if (res.preperiodic())
                std::cout << "preperiodic: tail " << res.tail << ", cycle "
                          << res.cycle_length << "\n";
            else
                std::cout << "wandering: height bound crossed at iterate " << res.escape_index
                          << "\n";
            for (const auto& P : res.orbit_prefix) std::cout << "  " << point_str(P) << "\n";
        } else if (*height_cmd) {
            require(height_cmd, "map", config.contains("map"));
            HeightInterval iv =
                canonical_height(parse_map(opt.map), parse_point(opt.point), opt.eps);
            std::cout << "canonical height in [" << iv.lo << ", " << iv.hi << "]\n";
        } else if (*curve_cmd) {
            require(curve_cmd, "family", config.contains("family"));
            QuadFamily fam = opt.fam.build();
            if (opt.stable_upto) {
                StableSet st = enumerate_until_stable(fam, *opt.stable_upto);
                std::cout << "stabilized at level " << st.stabilized_at << " with "
                          << st.components.size() << " component(s)\n";
                for (const auto& comp : st.components)
                    std::cout << component_to_json(fam, comp).dump(2) << "\n";
            } else {
                std::cout << "F_" << opt.level << " = "
                          << bipoly_str(preimage_curve_poly(fam, opt.level)) << "\n";
                for (const auto& comp : components(fam, opt.level))
                    std::cout << component_to_json(fam, comp).dump(2) << "\n";
            }
        } else if (*places_cmd) {
            require(places_cmd, "family", config.contains("family"));
            QuadFamily fam = opt.fam.build();
            auto comps = components(fam, opt.level);
            for (std::size_t i = 0; i < comps.size(); ++i) {
                PlaceReport rep = places_at_infinity(comps[i]);
                std::string id = kind_name(fam.kind()) + "-N" + std::to_string(opt.level) +
                                 "-" + std::to_string(i);
                if (opt.json) {
                    std::cout << place_report_to_json(rep, id).dump(2) << "\n";
                } else {
                    std::cout << id << ": deg_x " << rep.deg_x << ", " << rep.places.size()
                              << " place(s), " << rep.rational_count << " rational, r = "
                              << rep.runge_r << "\n";
                    for (const auto& p : rep.places)
                        std::cout << "  e = " << p.e << ", f = " << p.residue_degree << "\n";
                }
            }
        } else if (*sweep_cmd) {
            require(sweep_cmd, "family", config.contains("family"));
            require(sweep_cmd, "out", config.contains("out"));
            SweepSpec spec{opt.fam.build(), opt.height_cap, opt.s_cap, opt.workers};
            auto records = sweep(spec);
            std::ofstream out(opt.out);
            if (!out) {
                std::cerr << "cannot write " << opt.out << "\n";
                return 1;
            }
            out << sweep_csv(records);
            SweepSummary summary = summarize(records);
            std::cout << records.size() << " parameters, max |Preim| = " << summary.max_count
                      << " attained by " << summary.argmax.size() << " value(s)\n";
        } else if (*bounds_cmd) {
            std::cout << "evertse(" << opt.d << ", " << opt.s
                      << ") = " << evertse_bound(opt.d, opt.s).get_str() << "\n";
            auto [refined, coarse] = mu_bound(opt.d);
            std::cout << "mu(" << opt.d << ") = (" << refined.get_str() << ", "
                      << coarse.get_str() << ")\n";
            KappaInfo k = kappa_prime_loglog(opt.d, opt.s);
            std::cout << "log log kappa' = " << k.loglog << ", depth bound log2 = "
                      << k.depth_bound_log2 << "\n";
        } else if (*check_cmd) {
            require(check_cmd, "suite", config.contains("suite"));
            bool ok = false;
            if (opt.suite == "power-collapse") {
                ok = example21_check(4);
            } else if (opt.suite == "swap") {
                std::vector<Rational> ts;
                for (long v = -20; v <= 20; ++v) ts.emplace_back(v);
                ok = true;
                for (const auto& rec : swap_identity_check(
                         parse_poly_t("t"), parse_poly_t("1"), ts))
                    if (rec.equal && !*rec.equal) ok = false;
            } else if (opt.suite == "counting-bounds") {
                ok = true;  // theorem_bound_check throws on any violated bound
                theorem_bound_check(
                    QuadFamily(FamilyKind::PolyQuad, Poly(), Poly(), parse_poly_t("t")), 3);
                theorem_bound_check(QuadFamily(FamilyKind::RatQuad, parse_poly_t("1"),
                                               parse_poly_t("1"), parse_poly_t("t")),
                                    2);
                theorem_bound_check(QuadFamily(FamilyKind::RatQuad, Poly(), parse_poly_t("t"),
                                               parse_poly_t("1")),
                                    2);
            } else {
                std::cerr << "unknown suite " << opt.suite << "\n";
                return 1;
            }
            std::cout << (ok ? "PASS" : "FAIL") << "\n";
            if (!ok) return 1;
        }
    } catch (const HypothesisViolated& e) {
        std::cerr << "hypothesis violation: " << e.what() << "\n";
        return 2;
    } catch (const NotApplicable& e) {
        std::cerr << "hypothesis violation: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {  // bad input shapes: DegreeDrop and friends
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::logic_error& e) {
        std::cerr << "internal invariant failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
