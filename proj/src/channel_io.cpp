#include "ticknoise/channel_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace ticknoise {

namespace {

nlohmann::json matrix_to_pairs(const ComplexMatrix& m) {
    nlohmann::json out = nlohmann::json::array();
    for (std::size_t r = 0; r < m.dim(); ++r)
        for (std::size_t c = 0; c < m.dim(); ++c)
            out.push_back({m(r, c).real(), m(r, c).imag()});
    return out;
}

ComplexMatrix pairs_to_matrix(const nlohmann::json& j, std::size_t dim) {
    if (!j.is_array() || j.size() != dim * dim) {
        throw std::invalid_argument("channel JSON: matrix entry count mismatch");
    }
    ComplexMatrix m(dim);
    std::size_t i = 0;
    for (std::size_t r = 0; r < dim; ++r)
        for (std::size_t c = 0; c < dim; ++c, ++i) {
            const auto& entry = j[i];
            if (!entry.is_array() || entry.size() != 2) {
                throw std::invalid_argument("channel JSON: entries must be [re, im] pairs");
            }
            m(r, c) = cdouble{entry[0].get<double>(), entry[1].get<double>()};
        }
    return m;
}

}  // namespace

std::string channel_to_json_text(const DephasedGateChannel& ch) {
    nlohmann::ordered_json j;
    j["dim"] = ch.dim();
    j["energies"] = ch.generator.energies();
    j["eigenvectors"] = matrix_to_pairs(ch.generator.basis());
    j["tau"] = ch.target_duration;
    j["filter"] = matrix_to_pairs(ch.filter);
    return j.dump(2);
}

DephasedGateChannel channel_from_json_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("channel JSON: parse error: ") + e.what());
    }
    try {
        const auto dim = j.at("dim").get<std::size_t>();
        auto energies = j.at("energies").get<std::vector<double>>();
        if (energies.size() != dim) {
            throw std::invalid_argument("channel JSON: energies size mismatch");
        }
        SpectralHamiltonian generator(std::move(energies),
                                      pairs_to_matrix(j.at("eigenvectors"), dim));
        DephasedGateChannel ch{std::move(generator), j.at("tau").get<double>(),
                               pairs_to_matrix(j.at("filter"), dim), {}};
        return ch;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("channel JSON: bad schema: ") + e.what());
    }
}

DephasedGateChannel channel_from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("channel JSON: cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return channel_from_json_text(buf.str());
}

void validate_channel(const DephasedGateChannel& ch) {
    const std::size_t n = ch.dim();
    if (ch.filter.dim() != n) throw std::runtime_error("channel: filter dimension mismatch");
    for (std::size_t r = 0; r < n; ++r) {
        if (ch.filter(r, r) != cdouble{1.0, 0.0}) {
            throw std::runtime_error("channel: filter diagonal must be exactly 1");
        }
        for (std::size_t c = 0; c < n; ++c) {
            if (std::abs(ch.filter(r, c)) > 1.0 + 1e-12) {
                throw std::runtime_error("channel: filter magnitude exceeds 1");
            }
            if (std::abs(ch.filter(r, c) - std::conj(ch.filter(c, r))) > 1e-12) {
                throw std::runtime_error("channel: filter is not conjugate-symmetric");
            }
        }
    }
    if (!ch.generator.basis().is_unitary(kExactTol)) {
        throw std::runtime_error("channel: generator basis is not orthonormal");
    }
    if (!ch.kraus.empty() && !kraus_complete(ch.kraus, kExactTol)) {
        throw std::runtime_error("channel: kraus list is not complete");
    }
    if (n <= 8 && choi_min_eigenvalue(ch) < -1e-9) {
        throw std::runtime_error("channel: Choi matrix has a negative eigenvalue");
    }
}

}  // namespace ticknoise
