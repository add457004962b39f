// Writes random sets, their hull and solver support values to a JSON file
// for the external cross-check in cvx_oracle.py.

#include "ccg/serialize.hpp"
#include "support.hpp"

#include <cstdio>
#include <fstream>

using namespace ccg;
using namespace ccg::test;
using nlohmann::json;

int main(int argc, char** argv)
{
    if (argc != 2)
    {
        std::fprintf(stderr, "usage: %s OUT.json\n", argv[0]);
        return 2;
    }
    Rng rng(4242);
    json cases = json::array();
    for (int i = 0; i < 16; ++i)
    {
        const Index n = i % 2 ? 2 : 3;
        const auto X = i % 4 == 0 ? nested_hull(n, rng, 2) : random_set(n, rng, 2);
        const auto Y = random_leaf(n, rng);
        const auto H = convex_hull_pair(X, Y);
        json dirs = json::array();
        json hx = json::array(), hy = json::array(), hh = json::array();
        for (int k = 0; k < 6; ++k)
        {
            const Vector u = random_unit_direction(n, rng);
            dirs.push_back(vector_to_json(u));
            hx.push_back(support_function(X, u).value);
            hy.push_back(support_function(Y, u).value);
            hh.push_back(support_function(H, u).value);
        }
        cases.push_back({{"X", to_json(X)}, {"Y", to_json(Y)}, {"H", to_json(H)}, {"directions", dirs},
                         {"h_X", hx}, {"h_Y", hy}, {"h_H", hh}});
    }
    std::ofstream(argv[1]) << json{{"cases", cases}}.dump();
    return 0;
}
