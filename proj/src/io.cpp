#include "obsprob/io.hpp"

#include "obsprob/cabello18_data.hpp"

#include <fstream>
#include <map>
#include <sstream>
#include <utility>

namespace obsprob {

namespace {

// Field-path prefixes ("ensembles[2].parts[0].prob: ...") so a bad file
// pinpoints itself.
[[noreturn]] void fail(const std::string& path, const std::string& why) {
    throw FileError(path + ": " + why);
}

const Json& get_field(const Json& j, const std::string& key, const std::string& path) {
    if (!j.is_object()) fail(path, "expected a JSON object");
    auto it = j.find(key);
    if (it == j.end()) fail(path, "missing field \"" + key + "\"");
    return *it;
}

const Json& as_array(const Json& j, const std::string& path) {
    if (!j.is_array()) fail(path, "expected a JSON array");
    return j;
}

std::string as_string(const Json& j, const std::string& path) {
    if (!j.is_string()) fail(path, "expected a JSON string");
    return j.get<std::string>();
}

Scalar scalar_field(const Json& j, const std::string& path) {
    const std::string text = as_string(j, path);
    try {
        return parse_scalar(text);
    } catch (const ParseError& e) {
        fail(path, std::string("bad scalar \"") + text + "\": " + e.what());
    }
}

std::vector<std::string> string_array(const Json& j, const std::string& path) {
    std::vector<std::string> out;
    std::size_t i = 0;
    for (const Json& item : as_array(j, path)) {
        out.push_back(as_string(item, path + "[" + std::to_string(i) + "]"));
        ++i;
    }
    return out;
}

}  // namespace

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FileError(path + ": cannot open file");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) throw FileError(path + ": read failed");
    return std::move(buffer).str();
}

Json parse_json_text(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw FileError(std::string("not valid JSON: ") + e.what());
    }
}

ObservedDistribution observed_from_json(const Json& file) {
    SpacePtr space;
    try {
        space = SampleSpace::make(string_array(get_field(file, "outcomes", "file"), "outcomes"));
    } catch (const std::invalid_argument& e) {
        fail("outcomes", e.what());
    }

    ObservedDistribution obs;
    obs.frame.space = space;
    std::size_t e = 0;
    for (const Json& ens : as_array(get_field(file, "ensembles", "file"), "ensembles")) {
        const std::string epath = "ensembles[" + std::to_string(e) + "]";
        Ensemble ensemble;
        ensemble.name = as_string(get_field(ens, "name", epath), epath + ".name");
        ensemble.partition.space = space;
        std::vector<Scalar> row;
        std::size_t p = 0;
        for (const Json& part : as_array(get_field(ens, "parts", epath), epath + ".parts")) {
            const std::string ppath = epath + ".parts[" + std::to_string(p) + "]";
            const auto labels =
                string_array(get_field(part, "outcomes", ppath), ppath + ".outcomes");
            try {
                ensemble.partition.parts.push_back(Event::of_labels(space, labels));
            } catch (const std::invalid_argument& e2) {
                fail(ppath + ".outcomes", e2.what());
            }
            row.push_back(scalar_field(get_field(part, "prob", ppath), ppath + ".prob"));
            ++p;
        }
        obs.frame.ensembles.push_back(std::move(ensemble));
        obs.table.push_back(std::move(row));
        ++e;
    }
    return obs;
}

Json observed_to_json(const ObservedDistribution& obs) {
    Json file;
    file["outcomes"] = obs.frame.space->labels();
    file["ensembles"] = Json::array();
    for (std::size_t e = 0; e < obs.frame.ensembles.size(); ++e) {
        const Ensemble& ensemble = obs.frame.ensembles[e];
        Json jens;
        jens["name"] = ensemble.name;
        jens["parts"] = Json::array();
        for (std::size_t p = 0; p < ensemble.partition.parts.size(); ++p) {
            Json jpart;
            jpart["outcomes"] = ensemble.partition.parts[p].labels();
            jpart["prob"] = format_scalar(obs.part_prob(e, p));
            jens["parts"].push_back(std::move(jpart));
        }
        file["ensembles"].push_back(std::move(jens));
    }
    return file;
}

std::vector<Scalar> weights_from_json(const Json& file, const SpacePtr& space) {
    const Json& map = get_field(file, "weights", "file");
    if (!map.is_object()) fail("weights", "expected a JSON object");

    std::vector<Scalar> weights(space->size());
    std::vector<bool> seen(space->size(), false);
    for (const auto& [label, value] : map.items()) {
        const auto index = space->find(label);
        if (!index) fail("weights", "unknown outcome label \"" + label + "\"");
        if (seen[*index]) fail("weights", "outcome \"" + label + "\" listed twice");
        seen[*index] = true;
        weights[*index] = scalar_field(value, "weights[\"" + label + "\"]");
    }
    for (std::size_t i = 0; i < space->size(); ++i) {
        if (!seen[i]) fail("weights", "missing outcome \"" + space->label(i) + "\"");
    }
    return weights;
}

Json weights_to_json(const SignedDistribution& q) {
    Json map = Json::object();
    for (std::size_t i = 0; i < q.space()->size(); ++i) {
        map[q.space()->label(i)] = format_scalar(q.weight(i));
    }
    Json file;
    file["weights"] = std::move(map);
    return file;
}

BasisSystem bases_from_json(const Json& file) {
    BasisSystem system;
    std::size_t b = 0;
    for (const Json& jbasis : as_array(get_field(file, "bases", "file"), "bases")) {
        const std::string bpath = "bases[" + std::to_string(b) + "]";
        if (!jbasis.is_array() || jbasis.size() != 4) {
            fail(bpath, "a basis is an array of exactly 4 rays");
        }
        Basis basis;
        for (std::size_t r = 0; r < 4; ++r) {
            const std::string rpath = bpath + "[" + std::to_string(r) + "]";
            const Json& jray = jbasis[r];
            if (!jray.is_array() || jray.size() != 4) {
                fail(rpath, "a ray is an array of exactly 4 integers");
            }
            std::array<long long, 4> coords{};
            for (std::size_t c = 0; c < 4; ++c) {
                if (!jray[c].is_number_integer()) {
                    fail(rpath + "[" + std::to_string(c) + "]", "expected an integer");
                }
                coords[c] = jray[c].get<long long>();
            }
            try {
                basis.rays[r] = Ray::canonical(coords);
            } catch (const std::invalid_argument& e) {
                fail(rpath, e.what());
            }
        }
        system.bases.push_back(basis);
        ++b;
    }
    return system;
}

Json bases_to_json(const BasisSystem& s) {
    Json jbases = Json::array();
    for (const Basis& basis : s.bases) {
        Json jbasis = Json::array();
        for (const Ray& ray : basis.rays) {
            jbasis.push_back(std::vector<long long>(ray.coords.begin(), ray.coords.end()));
        }
        jbases.push_back(std::move(jbasis));
    }
    Json file;
    file["bases"] = std::move(jbases);
    return file;
}

BasisSystem cabello18() {
    static const BasisSystem system = bases_from_json(parse_json_text(detail::cabello18_json));
    return system;
}

}  // namespace obsprob
