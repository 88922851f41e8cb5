#pragma once

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "farey_nielsen/errors.hpp"
#include "farey_nielsen/farey_nielsen.hpp"
#include "farey_nielsen/render.hpp"
#include "farey_nielsen/report.hpp"

namespace farey_nielsen {

namespace cli {

inline Int parse_int(const std::string& s) {
    if (s.empty()) throw Error(Errc::Parse, "empty integer");
    std::size_t i = s[0] == '-' || s[0] == '+' ? 1 : 0;
    if (i == s.size()) throw Error(Errc::Parse, "sign without digits: " + s);
    for (; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9') throw Error(Errc::Parse, "not an integer: " + s);
    }
    return Int(s);
}

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == sep) { out.push_back(cur); cur.clear(); }
        else cur.push_back(ch);
    }
    out.push_back(cur);
    return out;
}

inline std::string strip(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t");
    std::size_t b = s.find_last_not_of(" \t");
    if (a == std::string::npos) return "";
    return s.substr(a, b - a + 1);
}

// "a,b;c,d"
inline IntMatrix2 parse_matrix(const std::string& s) {
    auto rows = split(s, ';');
    if (rows.size() != 2) throw Error(Errc::Parse, "matrix needs two rows: " + s);
    auto r0 = split(rows[0], ',');
    auto r1 = split(rows[1], ',');
    if (r0.size() != 2 || r1.size() != 2) throw Error(Errc::Parse, "matrix rows need two entries: " + s);
    return {parse_int(strip(r0[0])), parse_int(strip(r0[1])), parse_int(strip(r1[0])), parse_int(strip(r1[1]))};
}

// "p,q"
inline FareyVertex parse_vertex(const std::string& s) {
    auto parts = split(s, ',');
    if (parts.size() != 2) throw Error(Errc::Parse, "vertex needs two entries: " + s);
    return FareyVertex(parse_int(strip(parts[0])), parse_int(strip(parts[1])));
}

// "p" or "p/q"
inline Rational parse_rational(const std::string& s) {
    auto parts = split(s, '/');
    if (parts.size() == 1) return Rational(parse_int(strip(parts[0])));
    if (parts.size() == 2) return Rational(parse_int(strip(parts[0])), parse_int(strip(parts[1])));
    throw Error(Errc::Parse, "not a rational: " + s);
}

// "(p,q)@n"
inline GroupElement parse_element(const std::string& s) {
    std::string t = strip(s);
    if (t.empty() || t[0] != '(') throw Error(Errc::Parse, "element must look like (p,q)@n: " + s);
    std::size_t close = t.find(')');
    if (close == std::string::npos) throw Error(Errc::Parse, "unclosed vector in element: " + s);
    auto coords = split(t.substr(1, close - 1), ',');
    if (coords.size() != 2) throw Error(Errc::Parse, "element vector needs two entries: " + s);
    std::string rest = strip(t.substr(close + 1));
    if (rest.empty() || rest[0] != '@') throw Error(Errc::Parse, "element missing @exponent: " + s);
    GroupElement g;
    g.vec = {parse_int(strip(coords[0])), parse_int(strip(coords[1]))};
    g.exp = parse_int(strip(rest.substr(1)));
    // matrix powers grow linearly in bit size with the exponent; keep CLI
    // inputs where the move-by-move reduction stays fast
    if (abs(g.exp) > 10000) throw Error(Errc::Parse, "element exponent magnitude is capped at 10^4");
    return g;
}

// "(p,q)@n,(p,q)@n" — the separating comma is the one outside parentheses
inline GeneratingPair parse_pair(const std::string& s) {
    int depth = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '(') ++depth;
        else if (s[i] == ')') --depth;
        else if (s[i] == ',' && depth == 0) {
            return {parse_element(s.substr(0, i)), parse_element(s.substr(i + 1))};
        }
    }
    throw Error(Errc::Parse, "pair needs two elements: " + s);
}

// "a:b" with rational endpoints
inline std::pair<Rational, Rational> parse_range(const std::string& s) {
    auto parts = split(s, ':');
    if (parts.size() != 2) throw Error(Errc::Parse, "range must be min:max: " + s);
    return {parse_rational(strip(parts[0])), parse_rational(strip(parts[1]))};
}

inline long depth_cap(long requested) {
    const char* env = std::getenv("FAREY_NIELSEN_MAX_DEPTH");
    if (!env) return requested;
    long cap = std::atol(env);
    if (cap <= 0) return requested;
    return std::min(requested, cap);
}

// Oracle consistency suites behind `selftest`; any disagreement exits 3.
inline int run_selftest(const std::string& level, std::ostream& os) {
    bool full = level == "full";
    std::mt19937_64 rng(20240811);
    auto rand_small = [&](long lo, long hi) { return (long)(rng() % (hi - lo + 1)) + lo; };

    auto random_unimodular = [&](int len) {
        IntMatrix2 m = IntMatrix2::identity();
        for (int i = 0; i < len; ++i) {
            switch (rng() % 3) {
                case 0: m = m * IntMatrix2{1, Int(rand_small(-2, 2)), 0, 1}; break;
                case 1: m = m * IntMatrix2{1, 0, Int(rand_small(-2, 2)), 1}; break;
                default: m = m * IntMatrix2{0, 1, 1, 0}; break;
            }
        }
        return m;
    };

    // 1. unit solver vs box search
    {
        long bound = full ? 10 : 6;
        long box = full ? 120 : 60;
        long checked = 0;
        for (long i = 0, n = full ? 4000 : 800; i < n; ++i) {
            BinaryQuadraticForm f{Int(rand_small(-bound, bound)), Int(rand_small(-bound, bound)),
                                  Int(rand_small(-bound, bound))};
            auto v = represents_unit(f);
            bool box_found = false;
            for (Int q = 0; q <= box && !box_found; ++q) {
                for (Int p = -box; p <= box && !box_found; ++p) {
                    if (abs(f.eval(p, q)) == 1) box_found = true;
                }
            }
            if (v && abs(f.eval(*v)) != 1) {
                os << "[FAIL] solver produced a bad witness\n";
                return 3;
            }
            if (!v && box_found) {
                os << "[FAIL] solver missed a representable form (" << f.a << "," << f.b << "," << f.c << ")\n";
                return 3;
            }
            if (v && !box_found && height(*v) <= box) {
                os << "[FAIL] box missed a small witness\n";
                return 3;
            }
            ++checked;
        }
        os << "[ok] unit solver vs box search (" << checked << " forms)\n";
    }

    // 2. count/centralizer/partition triangle on random 2-generated matrices
    {
        long want = full ? 150 : 40;
        long done = 0;
        while (done < want) {
            IntMatrix2 m = random_unimodular(8);
            if (mat_height(m) > 60 || !standard_form(m)) continue;
            int count = count_one_orbits(m);
            long index = centralizer_index(m);
            if (count != index) {
                os << "[FAIL] orbit count != centralizer index\n";
                return 3;
            }
            std::vector<FareyVertex> members = s_a_members(m, 12);
            std::set<std::size_t> classes;
            std::vector<FareyVertex> reps = one_orbit_representatives(m);
            for (const FareyVertex& v : members) {
                for (std::size_t i = 0; i < reps.size(); ++i) {
                    if (same_one_orbit(m, v, reps[i])) classes.insert(i);
                }
            }
            if (!members.empty() && static_cast<int>(classes.size()) != count) {
                os << "[FAIL] orbit partition size mismatch\n";
                return 3;
            }
            ++done;
        }
        os << "[ok] orbit count = centralizer index (" << done << " matrices)\n";
    }

    // 3. turning anchors
    {
        for (long x = -6; x <= 6; ++x) {
            for (int eps : {1, -1}) {
                if (x == 0) continue;  // periodic orbit, no interior turn at 0
                IntMatrix2 m{0, Int(eps), 1, Int(x)};
                FareyVertex inf = FareyVertex::infinity();
                FareyVertex fwd(m * inf.vec());
                FareyVertex bwd(mat_inv(m) * inf.vec());
                if (!(fwd == bwd)) {
                    Int turn = turning_number(bwd, inf, fwd);
                    Int expect = Int(x);  // A(inf) - A^-1(inf) = 0 - (-x)
                    if (turn != expect) {
                        os << "[FAIL] turning anchor at infinity\n";
                        return 3;
                    }
                }
                FareyVertex zero(0, 1);
                FareyVertex fz(m * zero.vec());
                FareyVertex bz(mat_inv(m) * zero.vec());
                if (!(fz == bz)) {
                    Int turn = turning_number(bz, zero, fz);
                    if (turn != Int(-eps) * Int(x)) {
                        os << "[FAIL] turning anchor at zero\n";
                        return 3;
                    }
                }
            }
        }
        os << "[ok] turning number anchors\n";
    }

    // 4. geodesic criterion spot checks
    {
        long paths = full ? 120 : 30;
        for (long i = 0; i < paths; ++i) {
            FareyVertex a = FareyVertex::infinity();
            FareyVertex b = FareyVertex::from_integer(Int(rand_small(-3, 3)));
            std::vector<FareyVertex> verts{a, b};
            long len = rand_small(2, 5);
            for (long j = 1; j < len; ++j) {
                long t = rand_small(3, 6) * (rng() % 2 ? 1 : -1);
                verts.push_back(link_neighbor(verts[j], verts[j - 1], Int(t)));
            }
            long d = farey_distance(verts.front(), verts.back(), len + 2);
            if (d != len) {
                os << "[FAIL] turning >= 3 path is not a geodesic\n";
                return 3;
            }
        }
        os << "[ok] geodesic criterion (" << paths << " paths)\n";
    }

    // 5. Nielsen certificate replay
    {
        IntMatrix2 m{2, 1, 1, 1};
        GeneratingPair base{{{1, 0}, 0}, {{0, 0}, 1}};
        for (long i = 0, n = full ? 40 : 10; i < n; ++i) {
            GeneratingPair p = base;
            long k = rand_small(1, 6);
            for (long j = 0; j < k; ++j) {
                NielsenMove mv = detail::all_moves()[rng() % detail::all_moves().size()];
                p = apply_move(m, p, mv);
            }
            auto cert = nielsen_bfs_search(m, base, p, depth_cap(8), Int(1000000));
            if (!cert) {
                os << "[FAIL] search missed a nearby pair\n";
                return 3;
            }
            if (nielsen_class_of(m, p) != nielsen_class_of(m, base)) {
                os << "[FAIL] moves changed the Nielsen class\n";
                return 3;
            }
        }
        os << "[ok] Nielsen search certificates\n";
    }

    os << "selftest passed (" << (full ? "full" : "quick") << ")\n";
    return 0;
}

}  // namespace cli

inline int run_cli(int argc, const char* const* argv) {
    CLI::App app{"Exact toolkit for torus bundle groups Z^2 x| Z: 2-generation, Farey graph 1-orbits, Nielsen classes"};
    app.require_subcommand(1);

    std::string matrix_arg, pair_arg, u_arg, v_arg, out_file, range_arg = "-2:2", level = "quick";
    std::string format = "json";
    long bound = 10, budget = 64;
    int depth = 6, width = 800, img_height = 400;

    auto* c_classify = app.add_subcommand("classify", "Classification and Nielsen class report for a matrix");
    c_classify->add_option("matrix", matrix_arg, "matrix as a,b;c,d")->required();
    c_classify->add_option("--format", format, "output format (json)");

    auto* c_orbits = app.add_subcommand("orbits", "List S_A members up to a height bound, split into 1-orbits");
    c_orbits->add_option("matrix", matrix_arg)->required();
    c_orbits->add_option("--bound", bound, "height bound");
    c_orbits->add_option("--format", format);

    auto* c_pair = app.add_subcommand("pair-class", "Nielsen class of an ordered generating pair");
    c_pair->add_option("matrix", matrix_arg)->required();
    c_pair->add_option("pair", pair_arg, "pair as (p,q)@n,(p,q)@n")->required();
    c_pair->add_option("--format", format);

    auto* c_dist = app.add_subcommand("distance", "Farey graph distance between two vertices");
    c_dist->add_option("u", u_arg, "vertex as p,q")->required();
    c_dist->add_option("v", v_arg, "vertex as p,q")->required();
    c_dist->add_option("--budget", budget, "search radius bound");
    c_dist->add_option("--format", format);

    auto* c_render = app.add_subcommand("render", "SVG picture of the Farey graph with highlighted 1-orbits");
    c_render->add_option("matrix", matrix_arg)->required();
    c_render->add_option("--range", range_arg, "x range as min:max (rationals)");
    c_render->add_option("--depth", depth, "mediant depth");
    c_render->add_option("--width", width);
    c_render->add_option("--height", img_height);
    c_render->add_option("--out", out_file, "output file (stdout if omitted)");

    auto* c_self = app.add_subcommand("selftest", "Run the oracle consistency suites");
    c_self->add_option("--level", level, "quick or full")->check(CLI::IsMember({"quick", "full"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        json err;
        err["error"] = {{"code", "Parse"}, {"message", e.what()}};
        std::cout << err.dump(2) << "\n";
        return 2;
    }

    try {
        if (format != "json") throw Error(Errc::Parse, "unsupported output format: " + format);
        if (*c_classify) {
            std::cout << classification_report(cli::parse_matrix(matrix_arg)).dump(2) << "\n";
        } else if (*c_orbits) {
            if (bound < 0 || bound > 2000) throw Error(Errc::Parse, "height bound must lie in [0, 2000]");
            std::cout << orbits_report(cli::parse_matrix(matrix_arg), bound).dump(2) << "\n";
        } else if (*c_pair) {
            std::cout << pair_class_report(cli::parse_matrix(matrix_arg), cli::parse_pair(pair_arg)).dump(2) << "\n";
        } else if (*c_dist) {
            std::cout << distance_report(cli::parse_vertex(u_arg), cli::parse_vertex(v_arg), cli::depth_cap(budget)).dump(2)
                      << "\n";
        } else if (*c_render) {
            IntMatrix2 m = cli::parse_matrix(matrix_arg);
            RenderSpec spec;
            auto [lo, hi] = cli::parse_range(range_arg);
            spec.x_min = lo;
            spec.x_max = hi;
            spec.depth = depth;
            spec.width = width;
            spec.height = img_height;
            std::string svg = render_svg(m, spec);
            if (out_file.empty()) {
                std::cout << svg;
            } else {
                std::ofstream f(out_file, std::ios::binary);
                if (!f) throw Error(Errc::Parse, "cannot open output file " + out_file);
                f << svg;
            }
        } else if (*c_self) {
            return cli::run_selftest(level, std::cout);
        }
        return 0;
    } catch (const Error& e) {
        json err;
        err["error"] = {{"code", errc_name(e.code())}, {"message", e.what()}};
        std::cout << err.dump(2) << "\n";
        return 2;
    } catch (const InternalError& e) {
        json err;
        err["error"] = {{"code", "Internal"}, {"message", e.what()}};
        std::cout << err.dump(2) << "\n";
        return 3;
    }
}

}  // namespace farey_nielsen
