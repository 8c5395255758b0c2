#include "app/manifest.hpp"

#include <array>
#include <cstdio>
#include <fstream>

#include <openssl/evp.h>

#include "acemd/error.hpp"
#include "acemd/version.hpp"

namespace acemd::app {

std::string sha256_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::IoError, "cannot open " + path.string());
    EVP_MD_CTX* ctx = EVP_MD_CTX_new();
    EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
    std::array<char, 1 << 16> buf;
    while (in) {
        in.read(buf.data(), buf.size());
        EVP_DigestUpdate(ctx, buf.data(), std::size_t(in.gcount()));
    }
    std::array<unsigned char, EVP_MAX_MD_SIZE> md;
    unsigned len = 0;
    EVP_DigestFinal_ex(ctx, md.data(), &len);
    EVP_MD_CTX_free(ctx);
    std::string hex;
    char byte[3];
    for (unsigned k = 0; k < len; ++k) {
        std::snprintf(byte, sizeof byte, "%02x", md[k]);
        hex += byte;
    }
    return hex;
}

nlohmann::json to_json(const EnsembleConfig& cfg) {
    return {
        {"ensemble_size", cfg.ensemble_size},
        {"noise_sigma", cfg.noise_sigma},
        {"seed", cfg.seed},
        {"max_modes", cfg.max_modes},
        {"sift_max_iters", cfg.sift_max_iters},
        {"sift_sd_tol", cfg.sift_sd_tol},
        {"imf_mean_tol", cfg.imf_mean_tol},
        {"spline_boundary", to_string(cfg.spline_boundary)},
        {"noise", to_string(cfg.noise)},
    };
}

nlohmann::json input_record(const Dataset& d) {
    nlohmann::json j{
        {"path", d.path.string()},
        {"sha256", d.sha256},
        {"rows", d.dates.size()},
        {"column", d.column},
        {"date_column", d.date_column},
        {"log", d.log_applied},
    };
    if (!d.dates.empty()) {
        j["first_date"] = format_date(d.dates.front());
        j["last_date"] = format_date(d.dates.back());
    }
    return j;
}

nlohmann::json make_manifest(const std::string& command, const std::vector<nlohmann::json>& inputs,
                             const nlohmann::json& config, std::uint64_t seed) {
    return {
        {"schema", "acemd-manifest/1"},
        {"command", command},
        {"library_version", std::string(kVersion)},
        {"seed", seed},
        {"inputs", inputs},
        {"config", config},
    };
}

void write_json(const std::filesystem::path& path, const nlohmann::json& j) {
    write_text(path, j.dump(2) + "\n");
}

}  // namespace acemd::app
