#include "knotgeo_cli/report.hpp"

#include <cstdio>
#include <sstream>

#include "json.hpp"

namespace knotgeo::cli {

namespace {

using nlohmann::json;

json vec_json(const Vec3& v) { return json::array({v.x, v.y, v.z}); }

json pos_json(const ArcPosition& p) {
    return {{"edge", p.edge}, {"t", p.t}, {"s", p.s}};
}

json ineq_json(const bounds::ArcInequality& e) {
    return {{"label", e.label},
            {"value", e.value},
            {"required", e.required},
            {"margin", e.margin},
            {"pass", e.pass}};
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

}  // namespace

std::string render_json(const AnalysisReport& rep) {
    json j;
    j["schema_version"] = 1;
    j["knot"] = {{"n", rep.n}, {"length", rep.length}};
    j["thickness"] = {
        {"min_rad", rep.thickness.min_rad},
        {"dcsd", rep.thickness.dcsd},
        {"thickness", rep.thickness.thickness},
        {"ropelength", rep.thickness.ropelength},
        {"witnesses",
         {{"min_rad_vertex", rep.thickness.min_rad_vertex},
          {"dcsd_pair",
           json::array({pos_json(rep.thickness.dcsd_first),
                        pos_json(rep.thickness.dcsd_second)})}}}};

    json quads = json::array();
    json certs = json::array();
    for (const QuadrisecantEntry& e : rep.entries) {
        const Quadrisecant& q = e.quad;
        json jq;
        jq["order_type"] = to_string(q.order_type);
        jq["points"] = json::array({vec_json(q.points[0]), vec_json(q.points[1]),
                                    vec_json(q.points[2]), vec_json(q.points[3])});
        jq["positions"] = json::array({pos_json(q.positions[0]), pos_json(q.positions[1]),
                                       pos_json(q.positions[2]), pos_json(q.positions[3])});
        jq["line"] = {{"point", vec_json(q.line.point)},
                      {"direction", vec_json(q.line.direction)}};
        jq["line_params"] = json::array({q.line_params[0], q.line_params[1],
                                         q.line_params[2], q.line_params[3]});
        jq["r"] = q.r;
        jq["s"] = q.s;
        jq["t"] = q.t;
        json uncond = json::array(), ess = json::array();
        for (const auto& ie : e.arc_checks.unconditional) uncond.push_back(ineq_json(ie));
        for (const auto& ie : e.arc_checks.essential) ess.push_back(ineq_json(ie));
        jq["arc_checks"] = {{"unconditional", uncond},
                            {"essential", ess},
                            {"unconditional_pass", e.arc_checks.unconditional_pass},
                            {"essential_pass", e.arc_checks.essential_pass}};
        quads.push_back(jq);

        const bounds::BoundCertificate& c = e.certificate;
        json jc;
        jc["type"] = to_string(c.order_type);
        jc["assumptions"] = json::array({"quadrisecant is essential"});
        jc["bound"] = c.lower_bound;
        json terms = json::array();
        for (const auto& [label, value] : c.terms)
            terms.push_back({{"label", label}, {"value", value}});
        jc["terms"] = terms;
        jc["preconditions_met"] = c.preconditions_met;
        jc["violations"] = c.violations;
        jc["r"] = c.r;
        jc["s"] = c.s;
        jc["t"] = c.t;
        certs.push_back(jc);
    }
    j["quadrisecants"] = quads;
    j["certificates"] = certs;

    j["diagnostics"] = {{"degenerate_quadruples", rep.degenerate_quadruples},
                        {"dedup_merges", rep.dedup_merges},
                        {"multi_secant_lines", rep.multi_secant_lines}};
    j["seed"] = rep.options.seed;
    j["tolerances"] = {{"tol", rep.options.tol},
                       {"dedup_angle", 1e-6},
                       {"dedup_distance_rel", 1e-6}};
    j["warnings"] = rep.warnings;

    json summary;
    summary["ropelength"] = rep.thickness.ropelength;
    summary["quadrisecant_count"] = rep.entries.size();
    if (!rep.entries.empty()) summary["unconditional_floor"] = rep.unconditional_floor;
    if (rep.options.assume_essential && !rep.entries.empty())
        summary["essential_bound"] = rep.essential_bound;
    if (rep.options.expect_nontrivial) {
        summary["nontrivial_floor"] = kNontrivialFloor;
        summary["nontrivial_floor_met"] = rep.nontrivial_floor_met;
    }
    summary["normalized_units"] = rep.options.normalize;
    j["summary"] = summary;

    return j.dump(2) + "\n";
}

std::string render_text(const AnalysisReport& rep) {
    std::ostringstream out;
    out << "knot: n=" << rep.n << " length=" << fmt(rep.length);
    if (rep.options.normalize) out << " (unit-thickness units)";
    out << "\n";
    for (const std::string& w : rep.warnings) out << "warning: " << w << "\n";
    const ThicknessReport& th = rep.thickness;
    out << "thickness: min_rad=" << fmt(th.min_rad) << " (vertex "
        << th.min_rad_vertex << ")  dcsd=" << fmt(th.dcsd) << "  thickness="
        << fmt(th.thickness) << "\n";
    out << "ropelength: " << fmt(th.ropelength) << "\n";
    out << "quadrisecants: " << rep.entries.size()
        << " (degenerate quadruples: " << rep.degenerate_quadruples
        << ", merges: " << rep.dedup_merges
        << ", multi-secant lines: " << rep.multi_secant_lines << ")\n";

    int idx = 0;
    for (const QuadrisecantEntry& e : rep.entries) {
        const Quadrisecant& q = e.quad;
        out << "  [" << idx++ << "] " << to_string(q.order_type)
            << "  r=" << fmt(q.r) << " s=" << fmt(q.s) << " t=" << fmt(q.t) << "\n";
        for (int i = 0; i < 4; ++i) {
            out << "      p" << i << "=(" << fmt(q.points[i].x) << ", "
                << fmt(q.points[i].y) << ", " << fmt(q.points[i].z) << ") edge "
                << q.positions[i].edge << " t=" << fmt(q.positions[i].t)
                << " s=" << fmt(q.positions[i].s) << "\n";
        }
        const bounds::BoundCertificate& c = e.certificate;
        out << "      certificate[" << to_string(c.order_type)
            << ", assumes essential]: bound=" << fmt(c.lower_bound) << " (";
        bool first = true;
        for (const auto& [label, value] : c.terms) {
            if (!first) out << " + ";
            out << label << "=" << fmt(value);
            first = false;
        }
        out << ")";
        if (!c.preconditions_met) {
            out << " [precondition violated:";
            for (const std::string& v : c.violations) out << " " << v << ";";
            out << "]";
        }
        out << "\n";
        auto render_tier = [&](const char* name,
                               const std::vector<bounds::ArcInequality>& tier) {
            out << "      " << name << ":";
            for (const auto& ie : tier)
                out << " " << ie.label << "=" << fmt(ie.value) << ">="
                    << fmt(ie.required) << (ie.pass ? " ok" : " FAIL") << ";";
            out << "\n";
        };
        render_tier("arcs (unconditional)", e.arc_checks.unconditional);
        render_tier("arcs (if essential)", e.arc_checks.essential);
    }

    out << "summary: ropelength=" << fmt(th.ropelength);
    if (!rep.entries.empty()) {
        out << " unconditional_floor=" << fmt(rep.unconditional_floor);
        if (rep.options.assume_essential)
            out << " essential_bound=" << fmt(rep.essential_bound);
    }
    if (rep.options.expect_nontrivial)
        out << " nontrivial_floor=" << fmt(kNontrivialFloor)
            << (rep.nontrivial_floor_met ? " met" : " NOT met");
    out << "\n";
    return out.str();
}

}  // namespace knotgeo::cli
