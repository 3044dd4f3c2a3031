#include "boxhelly/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace boxhelly {

namespace {

using nlohmann::json;

void require(bool ok, const std::string& what) {
    if (!ok) throw ParseError("malformed instance: " + what);
}

void require_keys(const json& j, std::set<std::string> keys, const std::string& where) {
    require(j.is_object(), where + " must be an object");
    for (const auto& [key, unused] : j.items())
        require(keys.count(key) == 1, where + " has unknown key '" + key + "'");
    for (const std::string& key : keys)
        require(j.contains(key), where + " misses key '" + key + "'");
}

Rational rational_field(const json& j, const std::string& where) {
    require(j.is_string(), where + " must be a rational string");
    return parse_rational(j.get<std::string>());
}

json rational_json(const Rational& r) { return rational_to_string(r); }

}  // namespace

Instance instance_from_json(const json& j) {
    require_keys(j, {"version", "dimension", "families", "points"}, "instance");
    require(j["version"].is_string() && j["version"] == kInstanceVersion,
            "unsupported version tag");
    require(j["dimension"].is_number_unsigned() && j["dimension"].get<std::uint64_t>() >= 1,
            "dimension must be a positive integer");

    Instance inst;
    inst.dimension = j["dimension"].get<std::size_t>();
    require(j["families"].is_array() && !j["families"].empty(),
            "families must be a nonempty array");
    for (const json& fam : j["families"]) {
        require(fam.is_array() && !fam.empty(), "each family must be a nonempty array");
        std::vector<Box> boxes;
        for (const json& jbox : fam) {
            require(jbox.is_array() && jbox.size() == inst.dimension,
                    "each box needs one [lo, hi] pair per axis");
            Box box;
            for (const json& side : jbox) {
                require(side.is_array() && side.size() == 2,
                        "each side must be a [lo, hi] pair");
                Rational lo = rational_field(side[0], "side lo");
                Rational hi = rational_field(side[1], "side hi");
                require(lo <= hi, "side with lo > hi");
                box.sides.push_back({std::move(lo), std::move(hi)});
            }
            boxes.push_back(std::move(box));
        }
        inst.families.push_back(std::move(boxes));
    }
    require(j["points"].is_array(), "points must be an array");
    for (const json& jp : j["points"]) {
        require_keys(jp, {"coords", "multiplicity"}, "point");
        require(jp["coords"].is_array() && jp["coords"].size() == inst.dimension,
                "point needs one coordinate per axis");
        PointRecord p;
        for (const json& c : jp["coords"])
            p.coords.push_back(rational_field(c, "coordinate"));
        require(jp["multiplicity"].is_number_unsigned() &&
                    jp["multiplicity"].get<std::uint64_t>() >= 1,
                "multiplicity must be a positive integer");
        p.multiplicity = jp["multiplicity"].get<std::uint64_t>();
        inst.points.push_back(std::move(p));
    }
    try {
        inst.validate();
    } catch (const UsageError& e) {
        throw ParseError(std::string("malformed instance: ") + e.what());
    }
    return inst;
}

json instance_to_json(const Instance& instance) {
    json jfamilies = json::array();
    for (const auto& fam : instance.families) {
        json jfam = json::array();
        for (const Box& box : fam) {
            json jbox = json::array();
            for (const Interval& side : box.sides)
                jbox.push_back({rational_json(side.lo), rational_json(side.hi)});
            jfam.push_back(std::move(jbox));
        }
        jfamilies.push_back(std::move(jfam));
    }
    json jpoints = json::array();
    for (const PointRecord& p : instance.points) {
        json coords = json::array();
        for (const Rational& c : p.coords) coords.push_back(rational_json(c));
        jpoints.push_back({{"coords", std::move(coords)},
                           {"multiplicity", p.multiplicity}});
    }
    return {{"version", kInstanceVersion},
            {"dimension", instance.dimension},
            {"families", std::move(jfamilies)},
            {"points", std::move(jpoints)}};
}

Instance load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ParseError("invalid JSON in '" + path + "': " + e.what());
    }
    return instance_from_json(j);
}

std::string canonical_text(const json& j) { return j.dump(2) + "\n"; }

json boxref_to_json(const BoxRef& ref) {
    return {{"family", ref.family}, {"box", ref.box}};
}

BoxRef boxref_from_json(const json& j) {
    require_keys(j, {"family", "box"}, "box reference");
    require(j["family"].is_number_unsigned() && j["box"].is_number_unsigned(),
            "box reference indices must be unsigned");
    return {j["family"].get<std::size_t>(), j["box"].get<std::size_t>()};
}

json check_report_to_json(const CheckReport& report) {
    const char* verdict = nullptr;
    switch (report.verdict) {
        case CheckReport::Verdict::Holds: verdict = "holds"; break;
        case CheckReport::Verdict::Fails: verdict = "fails"; break;
        case CheckReport::Verdict::BudgetExceeded: verdict = "budget-exceeded"; break;
    }
    json witness = json::array();
    for (const BoxRef& ref : report.witness) witness.push_back(boxref_to_json(ref));
    json out = {{"verdict", verdict},
                {"witness", std::move(witness)},
                {"tuples_examined", report.tuples_examined}};
    if (!report.note.empty()) out["note"] = report.note;
    return out;
}

json solve_result_to_json(const SolveResult& result) {
    json out = {{"status", result.feasible() ? "optimal" : "infeasible"},
                {"nodes_explored", result.nodes_explored}};
    if (result.feasible()) {
        out["optimum"] = *result.optimum;
        out["witness"] = result.witness;
    }
    return out;
}

namespace {

json axis_seq_to_json(const AxisSeq& seq) {
    json out = json::array();
    for (const AxisStep& step : seq)
        out.push_back({step.axis, step.dir == Direction::Left ? "L" : "R"});
    return out;
}

AxisSeq axis_seq_from_json(const json& j) {
    require(j.is_array(), "axis sequence must be an array");
    AxisSeq seq;
    for (const json& step : j) {
        require(step.is_array() && step.size() == 2 && step[0].is_number_unsigned() &&
                    step[1].is_string() && (step[1] == "L" || step[1] == "R"),
                "axis step must be [axis, \"L\"|\"R\"]");
        seq.push_back({step[0].get<std::size_t>(),
                       step[1] == "L" ? Direction::Left : Direction::Right});
    }
    return seq;
}

json refs_to_json(const std::vector<BoxRef>& refs) {
    json out = json::array();
    for (const BoxRef& ref : refs) out.push_back(boxref_to_json(ref));
    return out;
}

std::vector<BoxRef> refs_from_json(const json& j) {
    require(j.is_array(), "expected an array of box references");
    std::vector<BoxRef> out;
    for (const json& ref : j) out.push_back(boxref_from_json(ref));
    return out;
}

}  // namespace

json certificate_to_json(const WitnessCertificate& cert) {
    const char* branch = nullptr;
    switch (cert.branch) {
        case WitnessCertificate::Branch::GapEmpty: branch = "gap-empty"; break;
        case WitnessCertificate::Branch::RichCore: branch = "rich-core"; break;
        case WitnessCertificate::Branch::Averaged: branch = "averaged"; break;
    }
    json out = {{"family", cert.family},
                {"copies", cert.copies},
                {"claimed_bound", cert.claimed_bound},
                {"per_box_hits", cert.per_box_hits},
                {"branch", branch},
                {"gap_copies", cert.gap_copies}};
    if (cert.selection) {
        const ExtremalSelection& sel = *cert.selection;
        out["selection"] = {{"seq", axis_seq_to_json(sel.seq)},
                            {"axis_free", sel.axis_free},
                            {"first_picks", refs_to_json(sel.first_picks)},
                            {"second_picks", refs_to_json(sel.second_picks)},
                            {"target_family", sel.target_family},
                            {"target_max_left", rational_json(sel.target_max_left)},
                            {"target_min_right", rational_json(sel.target_min_right)}};
    }
    return out;
}

WitnessCertificate certificate_from_json(const json& j) {
    std::set<std::string> keys = {"family",       "copies", "claimed_bound",
                                  "per_box_hits", "branch", "gap_copies"};
    if (j.is_object() && j.contains("selection")) keys.insert("selection");
    require_keys(j, keys, "certificate");

    WitnessCertificate cert;
    cert.family = j["family"].get<std::size_t>();
    cert.copies = j["copies"].get<std::vector<std::size_t>>();
    cert.claimed_bound = j["claimed_bound"].get<std::uint64_t>();
    cert.per_box_hits = j["per_box_hits"].get<std::vector<std::uint64_t>>();
    cert.gap_copies = j["gap_copies"].get<std::uint64_t>();
    const std::string branch = j["branch"].get<std::string>();
    if (branch == "gap-empty")
        cert.branch = WitnessCertificate::Branch::GapEmpty;
    else if (branch == "rich-core")
        cert.branch = WitnessCertificate::Branch::RichCore;
    else if (branch == "averaged")
        cert.branch = WitnessCertificate::Branch::Averaged;
    else
        throw ParseError("unknown certificate branch '" + branch + "'");
    if (j.contains("selection")) {
        const json& js = j["selection"];
        require_keys(js,
                     {"seq", "axis_free", "first_picks", "second_picks",
                      "target_family", "target_max_left", "target_min_right"},
                     "selection");
        ExtremalSelection sel;
        sel.seq = axis_seq_from_json(js["seq"]);
        sel.axis_free = js["axis_free"].get<std::size_t>();
        sel.first_picks = refs_from_json(js["first_picks"]);
        sel.second_picks = refs_from_json(js["second_picks"]);
        sel.target_family = js["target_family"].get<std::size_t>();
        sel.target_max_left = rational_field(js["target_max_left"], "target_max_left");
        sel.target_min_right =
            rational_field(js["target_min_right"], "target_min_right");
        cert.selection = std::move(sel);
    }
    return cert;
}

json reduction_to_json(const Reduction& reduction) {
    json clamps = json::array();
    for (const AxisClamp& clamp : reduction.clamps)
        clamps.push_back({{"axis", clamp.axis_original},
                          {"left_pick", boxref_to_json(clamp.left_pick)},
                          {"right_pick", boxref_to_json(clamp.right_pick)}});
    return {{"clamps", std::move(clamps)},
            {"surviving_families", reduction.surviving_families},
            {"point_backmap", reduction.point_backmap},
            {"selection_rule", reduction.selection_rule}};
}

}  // namespace boxhelly
