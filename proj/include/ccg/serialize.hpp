#ifndef CCG_SERIALIZE_HPP_
#define CCG_SERIALIZE_HPP_

#include "ccg/set.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>

namespace ccg
{
    /**
     * Set file format:
     *
     *   {"G": [[...], ...],   row-major, n rows of n_g entries
     *    "c": [...],
     *    "A": [[...], ...],   n_c rows of n_g entries (may be [])
     *    "b": [...],
     *    "blocks": [{"kind": "NormBall"|"NormCone"|"Free"|"Nonneg",
     *                "p": 1 | 2 | "inf", "xi": [...], "lambda": [...],
     *                "w": [...], "v": number}, ...],
     *    "tag": "Ellipsoid" ...}              optional
     *
     * Doubles are written with round-trip precision, so parse(dump(Z)) is
     * bit-identical for finite entries.
     */
    nlohmann::json to_json(const ConvexSetCCG& Z);

    /// Throws std::invalid_argument naming the offending field.
    ConvexSetCCG set_from_json(const nlohmann::json& j);

    std::string dump_set(const ConvexSetCCG& Z, int indent = -1);
    ConvexSetCCG parse_set(const std::string& text);

    ConvexSetCCG load_set(const std::filesystem::path& path);
    void save_set(const ConvexSetCCG& Z, const std::filesystem::path& path);

    nlohmann::json matrix_to_json(const Matrix& M);
    nlohmann::json vector_to_json(const Vector& v);
    Matrix matrix_from_json(const nlohmann::json& j, Index cols_if_empty, const char* field);
    Vector vector_from_json(const nlohmann::json& j, const char* field);
}

#endif
