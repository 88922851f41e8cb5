#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "farey_nielsen/boundary.hpp"
#include "farey_nielsen/farey_graph.hpp"
#include "farey_nielsen/integer.hpp"
#include "farey_nielsen/linear.hpp"
#include "farey_nielsen/matrix_actions.hpp"
#include "farey_nielsen/nielsen.hpp"
#include "farey_nielsen/orbits.hpp"

namespace farey_nielsen {

using json = nlohmann::json;

// Integers are emitted as JSON numbers while they are JS-safe and as decimal
// strings beyond that; report values at desk scale stay numeric.
inline json json_int(const Int& x) {
    static const Int js_max = (Int(1) << 53) - 1;
    if (abs(x) <= js_max) return json(to_int64(x));
    return json(to_string(x));
}

inline json json_vector(const IntVector2& v) { return json::array({json_int(v.p), json_int(v.q)}); }
inline json json_vertex(const FareyVertex& v) { return json::array({json_int(v.p()), json_int(v.q())}); }
inline json json_matrix(const IntMatrix2& m) {
    return json::array({json::array({json_int(m.a), json_int(m.b)}),
                        json::array({json_int(m.c), json_int(m.d)})});
}

inline json json_boundary_point(const BoundaryPoint& x, int digits = 6) {
    json out;
    if (x.is_rational()) {
        out["p"] = json_int(x.rational().num());
        out["q"] = 0;
        out["r"] = json_int(x.rational().den());
        out["D"] = 0;
        out["approx"] = x.rational().is_infinity() ? "inf" : x.rational().str();
        return out;
    }
    const QuadraticIrrational& z = x.irrational();
    out["p"] = json_int(z.p());
    out["q"] = json_int(z.q());
    out["r"] = json_int(z.r());
    out["D"] = json_int(z.d());
    out["approx"] = decimal_string(z, digits);
    return out;
}

inline json classification_report(const IntMatrix2& m) {
    MatrixClassification cls = classify_matrix(m);
    json out;
    out["matrix"] = json_matrix(m);
    out["det"] = json_int(cls.det);
    out["trace"] = json_int(cls.trace);
    out["isometry_type"] = isometry_name(cls.type);
    if (cls.type == IsometryType::Elliptic) out["elliptic_order"] = cls.elliptic_order;
    out["orientation"] = cls.orientation == Orientation::Preserving ? "preserving" : "reversing";

    auto sf = standard_form(m);
    out["two_generated"] = sf.has_value();
    if (sf) {
        json s;
        s["epsilon"] = sf->epsilon;
        s["x"] = json_int(sf->x);
        s["conjugator"] = json_matrix(sf->conjugator);
        out["standard_form"] = s;
        out["nielsen_classes"] = nielsen_class_count(m);
        json reps = json::array();
        for (const FareyVertex& r : one_orbit_representatives(m)) reps.push_back(json_vertex(r));
        out["orbit_representatives"] = reps;
        out["turning_absolute_value"] = json_int(abs(sf->x));
    }
    if (cls.type == IsometryType::Hyperbolic) {
        auto [lm, lp] = fixed_points(m);
        json fp;
        fp["lambda_minus"] = json_boundary_point(lm);
        fp["lambda_plus"] = json_boundary_point(lp);
        out["fixed_points"] = fp;
    }
    return out;
}

inline json orbits_report(const IntMatrix2& m, long bound) {
    std::vector<FareyVertex> members = s_a_members(m, bound);

    // partition by orbit: representatives grow as new classes appear
    std::vector<FareyVertex> class_reps;
    std::vector<std::vector<FareyVertex>> classes;
    for (const FareyVertex& v : members) {
        bool placed = false;
        for (std::size_t i = 0; i < class_reps.size() && !placed; ++i) {
            if (same_one_orbit(m, class_reps[i], v)) {
                classes[i].push_back(v);
                placed = true;
            }
        }
        if (!placed) {
            class_reps.push_back(v);
            classes.push_back({v});
        }
    }
    // internal validation of the partition
    for (std::size_t i = 0; i < class_reps.size(); ++i) {
        for (std::size_t j = i + 1; j < class_reps.size(); ++j) {
            if (same_one_orbit(m, class_reps[i], class_reps[j]))
                throw InternalError("orbit partition classes intersect");
        }
    }
    if (!members.empty()) {
        int expected = count_one_orbits(m);  // members nonempty implies 2-generated
        if (static_cast<int>(classes.size()) != expected)
            throw InternalError("orbit partition disagrees with the orbit count");
    }

    json out;
    out["matrix"] = json_matrix(m);
    out["bound"] = bound;
    out["member_count"] = static_cast<long>(members.size());
    json parts = json::array();
    for (std::size_t i = 0; i < classes.size(); ++i) {
        json part;
        part["representative"] = json_vertex(class_reps[i]);
        json mem = json::array();
        for (const FareyVertex& v : classes[i]) mem.push_back(json_vertex(v));
        part["members"] = mem;
        OneOrbit orbit = one_orbit_of(m, class_reps[i], 4);
        json sig = json::array();
        for (const Int& t : orbit.turning_signature) sig.push_back(json_int(t));
        part["turning_signature"] = sig;
        parts.push_back(part);
    }
    out["orbits"] = parts;
    return out;
}

inline json pair_class_report(const IntMatrix2& m, const GeneratingPair& p) {
    json out;
    if (!is_generating_pair(m, p)) {
        out["generating"] = false;
        return out;
    }
    std::size_t cls = nielsen_class_of(m, p);
    out["generating"] = true;
    out["class_id"] = static_cast<long>(cls);
    out["representative"] = json_vertex(one_orbit_representatives(m)[cls]);
    return out;
}

inline json distance_report(const FareyVertex& u, const FareyVertex& v, long budget) {
    json out;
    out["distance"] = farey_distance(u, v, budget);
    return out;
}

}  // namespace farey_nielsen
