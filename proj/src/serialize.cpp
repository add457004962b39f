#include "ccg/serialize.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ccg
{
    using nlohmann::json;

    json matrix_to_json(const Matrix& M)
    {
        json rows = json::array();
        for (Index i = 0; i < M.rows(); ++i)
        {
            json row = json::array();
            for (Index j = 0; j < M.cols(); ++j)
                row.push_back(M(i, j));
            rows.push_back(std::move(row));
        }
        return rows;
    }

    json vector_to_json(const Vector& v)
    {
        json out = json::array();
        for (Index i = 0; i < v.size(); ++i)
            out.push_back(v(i));
        return out;
    }

    Matrix matrix_from_json(const json& j, Index cols_if_empty, const char* field)
    {
        if (!j.is_array())
            throw std::invalid_argument(std::string("set file: field '") + field + "' must be an array of rows");
        if (j.empty())
            return Matrix(0, cols_if_empty);
        const auto rows = static_cast<Index>(j.size());
        if (!j[0].is_array())
            throw std::invalid_argument(std::string("set file: field '") + field + "' must be an array of rows");
        const auto cols = static_cast<Index>(j[0].size());
        Matrix M(rows, cols);
        for (Index i = 0; i < rows; ++i)
        {
            const auto& row = j[static_cast<std::size_t>(i)];
            if (!row.is_array() || static_cast<Index>(row.size()) != cols)
                throw std::invalid_argument(std::string("set file: field '") + field + "' has ragged rows");
            for (Index k = 0; k < cols; ++k)
            {
                if (!row[static_cast<std::size_t>(k)].is_number())
                    throw std::invalid_argument(std::string("set file: field '") + field + "' has a non-numeric entry");
                M(i, k) = row[static_cast<std::size_t>(k)].get<double>();
            }
        }
        return M;
    }

    Vector vector_from_json(const json& j, const char* field)
    {
        if (!j.is_array())
            throw std::invalid_argument(std::string("field '") + field + "' must be an array");
        Vector v(static_cast<Index>(j.size()));
        for (std::size_t i = 0; i < j.size(); ++i)
        {
            if (!j[i].is_number())
                throw std::invalid_argument(std::string("field '") + field + "' has a non-numeric entry");
            v(static_cast<Index>(i)) = j[i].get<double>();
        }
        return v;
    }

    namespace
    {
        json norm_to_json(NormOrder p)
        {
            switch (p)
            {
            case NormOrder::One:
                return 1;
            case NormOrder::Two:
                return 2;
            case NormOrder::Inf:
                return "inf";
            }
            return nullptr;
        }

        NormOrder norm_from_json(const json& j)
        {
            if (j.is_string() && (j == "inf" || j == "Inf" || j == "infinity"))
                return NormOrder::Inf;
            if (j.is_number())
            {
                const double p = j.get<double>();
                if (p == 1.0)
                    return NormOrder::One;
                if (p == 2.0)
                    return NormOrder::Two;
            }
            throw std::invalid_argument("set file: block field 'p' must be 1, 2 or \"inf\"");
        }

        BlockKind kind_from_json(const json& j)
        {
            if (!j.is_string())
                throw std::invalid_argument("set file: block field 'kind' must be a string");
            for (BlockKind k : {BlockKind::NormBall, BlockKind::NormCone, BlockKind::Free, BlockKind::Nonneg})
            {
                if (j.get<std::string>() == to_string(k))
                    return k;
            }
            throw std::invalid_argument("set file: unknown block kind '" + j.get<std::string>() + "'");
        }

        SetClassTag tag_from_string(const std::string& s)
        {
            for (SetClassTag t : {SetClassTag::Interval, SetClassTag::Zonotope, SetClassTag::Ellipsoid,
                                  SetClassTag::ConstrainedZonotope, SetClassTag::Cone, SetClassTag::General})
            {
                if (s == to_string(t))
                    return t;
            }
            throw std::invalid_argument("set file: unknown tag '" + s + "'");
        }

        std::vector<int> indices_from_json(const json& j, const char* field)
        {
            if (!j.is_array())
                throw std::invalid_argument(std::string("set file: block field '") + field + "' must be an array");
            std::vector<int> out;
            for (const auto& e : j)
            {
                if (!e.is_number_integer())
                    throw std::invalid_argument(std::string("set file: block field '") + field +
                                                "' must hold integers");
                out.push_back(e.get<int>());
            }
            return out;
        }
    }

    json to_json(const ConvexSetCCG& Z)
    {
        json blocks = json::array();
        for (const auto& blk : Z.blocks())
        {
            json jb;
            jb["kind"] = std::string(to_string(blk.kind));
            jb["p"] = norm_to_json(blk.p);
            jb["xi"] = blk.xi;
            jb["lambda"] = blk.lambda;
            jb["w"] = blk.w;
            jb["v"] = blk.v;
            blocks.push_back(std::move(jb));
        }
        json j;
        j["G"] = matrix_to_json(Z.G());
        j["c"] = vector_to_json(Z.c());
        j["A"] = matrix_to_json(Z.A());
        j["b"] = vector_to_json(Z.b());
        j["blocks"] = std::move(blocks);
        j["tag"] = std::string(to_string(Z.tag()));
        return j;
    }

    ConvexSetCCG set_from_json(const json& j)
    {
        if (!j.is_object())
            throw std::invalid_argument("set file: top level must be an object");
        for (const char* field : {"G", "c", "blocks"})
        {
            if (!j.contains(field))
                throw std::invalid_argument(std::string("set file: missing field '") + field + "'");
        }

        Vector c = vector_from_json(j.at("c"), "c");
        Matrix G;
        if (j.at("G").is_array() && !j.at("G").empty())
            G = matrix_from_json(j.at("G"), 0, "G");
        else
            G = Matrix(c.size(), 0);
        // rows of empty arrays encode n_g = 0 with n rows
        if (G.rows() == 0 && c.size() > 0)
            G = Matrix(c.size(), 0);

        Matrix A = j.contains("A") ? matrix_from_json(j.at("A"), G.cols(), "A") : Matrix(0, G.cols());
        Vector b = j.contains("b") ? vector_from_json(j.at("b"), "b") : Vector(0);

        std::vector<ConstraintBlock> blocks;
        if (!j.at("blocks").is_array())
            throw std::invalid_argument("set file: field 'blocks' must be an array");
        for (const auto& jb : j.at("blocks"))
        {
            if (!jb.is_object() || !jb.contains("kind"))
                throw std::invalid_argument("set file: each block needs a 'kind'");
            ConstraintBlock blk;
            blk.kind = kind_from_json(jb.at("kind"));
            if (jb.contains("p") && !jb.at("p").is_null())
                blk.p = norm_from_json(jb.at("p"));
            else if (blk.is_norm())
                throw std::invalid_argument("set file: norm block missing 'p'");
            blk.xi = jb.contains("xi") ? indices_from_json(jb.at("xi"), "xi") : std::vector<int>{};
            blk.lambda = jb.contains("lambda") ? indices_from_json(jb.at("lambda"), "lambda") : std::vector<int>{};
            if (jb.contains("w"))
            {
                const Vector w = vector_from_json(jb.at("w"), "w");
                blk.w.assign(w.data(), w.data() + w.size());
            }
            if (jb.contains("v"))
            {
                if (!jb.at("v").is_number())
                    throw std::invalid_argument("set file: block field 'v' must be a number");
                blk.v = jb.at("v").get<double>();
            }
            else
            {
                blk.v = 1.0;
            }
            blocks.push_back(std::move(blk));
        }

        const SetClassTag tag =
            j.contains("tag") && j.at("tag").is_string() ? tag_from_string(j.at("tag").get<std::string>())
                                                          : SetClassTag::General;
        ConvexSetCCG Z(std::move(G), std::move(c), std::move(A), std::move(b), std::move(blocks), tag);
        require_valid(Z, "set file");
        return Z;
    }

    std::string dump_set(const ConvexSetCCG& Z, int indent) { return to_json(Z).dump(indent); }

    ConvexSetCCG parse_set(const std::string& text)
    {
        json j;
        try
        {
            j = json::parse(text);
        }
        catch (const json::parse_error& e)
        {
            throw std::invalid_argument(std::string("set file: malformed JSON: ") + e.what());
        }
        return set_from_json(j);
    }

    ConvexSetCCG load_set(const std::filesystem::path& path)
    {
        std::ifstream in(path);
        if (!in)
            throw std::invalid_argument("cannot open set file " + path.string());
        std::stringstream ss;
        ss << in.rdbuf();
        return parse_set(ss.str());
    }

    void save_set(const ConvexSetCCG& Z, const std::filesystem::path& path)
    {
        std::ofstream out(path);
        if (!out)
            throw std::runtime_error("cannot write set file " + path.string());
        out << dump_set(Z, 2) << "\n";
    }
}
