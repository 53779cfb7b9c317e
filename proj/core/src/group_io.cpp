#include "selberg/group_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "selberg/errors.hpp"

namespace selberg {

namespace {

using nlohmann::json;

GroupPresentation from_json(const json& j) {
    if (!j.is_object()) throw validation_error("group json: top level must be an object");
    GroupPresentation g;
    g.label = j.value("label", std::string{});
    if (!j.contains("genus") || !j.at("genus").is_number_integer()) {
        throw validation_error("group json: missing integer field 'genus'");
    }
    g.genus = j.at("genus").get<int>();
    if (g.genus < 2) throw validation_error("group json: genus must be >= 2");

    if (!j.contains("generators") || !j.at("generators").is_array() ||
        j.at("generators").empty()) {
        throw validation_error("group json: 'generators' must be a non-empty array");
    }
    std::size_t idx = 0;
    for (const auto& row : j.at("generators")) {
        if (!row.is_array() || row.size() != 4) {
            std::ostringstream msg;
            msg << "group json: generator " << idx << " must be [a, b, c, d]";
            throw validation_error(msg.str());
        }
        std::array<double, 4> e{};
        for (std::size_t k = 0; k < 4; ++k) {
            if (!row[k].is_number()) {
                std::ostringstream msg;
                msg << "group json: generator " << idx << " entry " << k << " is not a number";
                throw validation_error(msg.str());
            }
            e[k] = row[k].get<double>();
        }
        double det = e[0] * e[3] - e[1] * e[2];
        if (std::abs(det - 1.0) > 1e-9) {
            std::ostringstream msg;
            msg << "group json: generator " << idx << " has determinant " << det
                << ", expected 1";
            throw validation_error(msg.str());
        }
        // keep validated entries verbatim so saving and reloading is exact
        g.generators.push_back(MoebiusElement::from_unit_entries(e[0], e[1], e[2], e[3]));
        ++idx;
    }

    if (j.contains("relators")) {
        if (!j.at("relators").is_array()) {
            throw validation_error("group json: 'relators' must be an array");
        }
        std::size_t ridx = 0;
        for (const auto& rel : j.at("relators")) {
            if (!rel.is_array()) {
                std::ostringstream msg;
                msg << "group json: relator " << ridx << " must be an array of letters";
                throw validation_error(msg.str());
            }
            Word w;
            for (const auto& l : rel) {
                if (!l.is_number_integer()) {
                    std::ostringstream msg;
                    msg << "group json: relator " << ridx << " contains a non-integer letter";
                    throw validation_error(msg.str());
                }
                int v = l.get<int>();
                if (v == 0 || std::abs(v) > static_cast<int>(g.generators.size())) {
                    std::ostringstream msg;
                    msg << "group json: relator " << ridx << " letter " << v
                        << " is out of range for " << g.generators.size() << " generators";
                    throw validation_error(msg.str());
                }
                w.push_back(v);
            }
            g.relators.push_back(std::move(w));
            ++ridx;
        }
    }

    for (std::size_t r = 0; r < g.relators.size(); ++r) {
        double res = g.evaluate(g.relators[r]).psl_distance(MoebiusElement::identity());
        if (res > 1e-9) {
            std::ostringstream msg;
            msg << "group json: relator " << r << " is violated, residual " << res;
            throw validation_error(msg.str());
        }
    }
    return g;
}

json to_json(const GroupPresentation& g) {
    json j;
    j["label"] = g.label;
    j["genus"] = g.genus;
    j["generators"] = json::array();
    for (const MoebiusElement& m : g.generators) {
        const auto& e = m.entries();
        j["generators"].push_back({e[0], e[1], e[2], e[3]});
    }
    j["relators"] = json::array();
    for (const Word& r : g.relators) j["relators"].push_back(r);
    return j;
}

}  // namespace

GroupPresentation group_from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw validation_error(std::string("group json: parse failure: ") + e.what());
    }
    return from_json(j);
}

std::string group_to_json_text(const GroupPresentation& g) {
    return to_json(g).dump(2) + "\n";
}

GroupPresentation load_group(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open group file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw io_error("read failure on group file: " + path);
    return group_from_json_text(buf.str());
}

void save_group(const std::string& path, const GroupPresentation& g) {
    std::ofstream out(path);
    if (!out) throw io_error("cannot open group file for writing: " + path);
    out << group_to_json_text(g);
    if (!out) throw io_error("write failure on group file: " + path);
}

}  // namespace selberg
