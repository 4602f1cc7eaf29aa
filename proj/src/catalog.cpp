#include "ospk/boundary.hpp"

namespace ospk {

namespace {

ParamMap params(std::initializer_list<std::pair<const char*, const char*>> kv) {
    ParamMap p;
    for (auto& [k, v] : kv) p[k] = Param::parse(v);
    return p;
}

}  // namespace

std::vector<KSolution> catalog_solutions() {
    std::vector<KSolution> out;
    auto add = [&](const char* alg, Family f, ParamMap p) { out.push_back(make_k(parse_algebra(alg), f, p)); };

    for (const char* a : {"so:4", "so:6", "so:8", "sp:2", "sp:4", "sp:6", "osp:2:2", "osp:2:4", "osp:4:2"})
        add(a, Family::D1, params({{"c", "1/2"}}));
    add("sp:4", Family::D1, params({{"c", "oo"}}));
    add("so:6", Family::D1, params({{"c", "oo"}}));

    for (const char* a : {"so:3", "so:4", "so:5", "so:6", "so:7", "so:8", "osp:2:2", "osp:4:2", "osp:2:4"})
        add(a, Family::D2, params({{"c1", "1/3"}}));

    add("so:3", Family::D3, params({{"m1", "1"}}));
    add("so:5", Family::D3, params({{"m1", "1"}}));
    add("so:5", Family::D3, params({{"m1", "2"}}));
    add("so:6", Family::D3, params({{"m1", "1"}}));
    add("so:8", Family::D3, params({{"m1", "2"}}));
    add("sp:4", Family::D3, params({{"n1", "1"}}));
    add("sp:6", Family::D3, params({{"n1", "1"}}));
    add("osp:4:2", Family::D3, params({{"m1", "1"}}));
    add("osp:2:4", Family::D3, params({{"m1", "1"}, {"n1", "1"}}));
    add("osp:1:2", Family::D3, params({{"n1", "1"}}));

    add("so:4", Family::D4, params({{"c2", "1/2"}, {"c3", "1/3"}}));
    add("so:2", Family::D5, params({{"k1", "1"}, {"k2", "(1+2u)/(1-3u)"}}));

    add("so:4", Family::ANTIDIAG, params({{"l1", "2"}, {"l2", "-1/3"}}));
    add("so:6", Family::ANTIDIAG, params({}));
    add("sp:2", Family::ANTIDIAG, params({{"l1", "3"}}));
    add("sp:4", Family::ANTIDIAG, params({{"l1", "1/2"}, {"l2", "5"}}));

    add("osp:2:2", Family::C1, params({{"k3", "0"}, {"l3", "1"}}));
    add("osp:4:2", Family::C1, params({{"k5", "3/5"}, {"l5", "4/5"}, {"l6", "4/5"}}));
    add("osp:2:4", Family::C1, params({{"k3", "3/5"}, {"l3", "4/5"}, {"k4", "0"}, {"l4", "2"}}));

    add("osp:4:2", Family::C2, params({{"m1", "1"}, {"m2", "0"}}));
    add("osp:2:4", Family::C2, params({{"m1", "0"}, {"m2", "0"}, {"l1", "1/2"}}));
    add("so:4", Family::C2, params({{"l1", "2"}, {"l2", "3"}}));
    return out;
}

}  // namespace ospk
