#include "bitour/certificate.hpp"

#include <json.hpp>

namespace bitour {

using nlohmann::json;

std::string certificate_to_json(const TwoFactorCertificate& cert, bool with_provenance) {
    json j;
    j["k"] = cert.k;
    j["p"] = cert.p;
    j["cycle_2p"] = cert.cycle_2p.vertices;
    j["cycle_rest"] = cert.cycle_rest.vertices;
    j["f_avoided"] = cert.f_avoided;
    j["witness"] = cert.witness ? json(*cert.witness) : json(nullptr);
    j["provenance"] = with_provenance ? json(cert.provenance) : json::array();
    return j.dump();
}

TwoFactorCertificate certificate_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw InvalidInput(std::string("certificate is not JSON: ") + e.what());
    }
    try {
        TwoFactorCertificate c;
        c.k = j.at("k").get<int>();
        c.p = j.at("p").get<int>();
        c.cycle_2p.vertices = j.at("cycle_2p").get<std::vector<Vertex>>();
        c.cycle_rest.vertices = j.at("cycle_rest").get<std::vector<Vertex>>();
        c.f_avoided = j.at("f_avoided").get<bool>();
        const json& w = j.at("witness");
        if (!w.is_null()) {
            auto ws = w.get<std::vector<Vertex>>();
            if (ws.size() != 4) throw InvalidInput("witness must list 4 vertices");
            c.witness = FWitness{ws[0], ws[1], ws[2], ws[3]};
        }
        if (j.contains("provenance")) c.provenance = j.at("provenance").get<std::vector<std::string>>();
        return c;
    } catch (const json::exception& e) {
        throw InvalidInput(std::string("malformed certificate: ") + e.what());
    }
}

}  // namespace bitour
