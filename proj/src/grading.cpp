#include "ospk/grading.hpp"

#include <sstream>
#include <stdexcept>

namespace ospk {

GradingSpec::GradingSpec(int m, int n, int theta0) : m_(m), n_(n), theta0_(theta0) {
    if (m < 0 || n < 0) throw std::invalid_argument("grading: negative dimension");
    if (n % 2 != 0) throw std::invalid_argument("grading: n must be even");
    if (m + n < 1) throw std::invalid_argument("grading: m = n = 0 is not an algebra");
    if (theta0 != 1 && theta0 != -1) throw std::invalid_argument("grading: theta0 must be +1 or -1");
    kappa_ = mpq_class((m - n - 2) * theta0, 2);
    kappa_.canonicalize();
    int d = m + n;
    odd_.resize(d);
    theta_.resize(d);
    bar_.resize(d);
    for (int i = 0; i < d; ++i) {
        int s = i < m ? theta0 : -theta0;
        odd_[i] = s < 0;
        theta_[i] = i < m + n / 2 ? 1 : -1;
        bar_[i] = i < m ? m - 1 - i : 2 * m + n - 1 - i;
    }
}

bool GradingSpec::all_even() const {
    for (bool o : odd_)
        if (o) return false;
    return true;
}

std::string GradingSpec::descriptor() const {
    if (n_ == 0 && theta0_ == 1) return "so:" + std::to_string(m_);
    if (m_ == 0 && theta0_ == -1) return "sp:" + std::to_string(n_);
    std::string s = "osp:" + std::to_string(m_) + ":" + std::to_string(n_);
    if (theta0_ != 1) s += ":-1";
    return s;
}

std::string GradingSpec::pretty() const {
    if (n_ == 0 && theta0_ == 1) return "so(" + std::to_string(m_) + ")";
    if (m_ == 0 && theta0_ == -1) return "sp(" + std::to_string(n_) + ")";
    std::string s = "osp(" + std::to_string(m_) + "|" + std::to_string(n_) + ")";
    if (theta0_ != 1) s += "[theta0=-1]";
    return s;
}

GradingSpec build_grading(int m, int n, int theta0) { return GradingSpec(m, n, theta0); }

GradingSpec parse_algebra(const std::string& d) {
    std::vector<std::string> parts;
    std::stringstream ss(d);
    std::string tok;
    while (std::getline(ss, tok, ':')) parts.push_back(tok);
    auto num = [&](const std::string& s) {
        std::size_t pos = 0;
        int v = 0;
        try {
            v = std::stoi(s, &pos);
        } catch (const std::exception&) {
            pos = 0;
        }
        if (pos != s.size() || s.empty()) throw std::invalid_argument("algebra descriptor: bad integer '" + s + "' in '" + d + "'");
        return v;
    };
    if (parts.size() == 2 && parts[0] == "so") return GradingSpec(num(parts[1]), 0, 1);
    if (parts.size() == 2 && parts[0] == "sp") return GradingSpec(0, num(parts[1]), -1);
    if ((parts.size() == 3 || parts.size() == 4) && parts[0] == "osp") {
        int t0 = parts.size() == 4 ? num(parts[3]) : 1;
        return GradingSpec(num(parts[1]), num(parts[2]), t0);
    }
    throw std::invalid_argument("algebra descriptor: expected so:m, sp:n or osp:m:n[:theta0], got '" + d + "'");
}

std::vector<GradingSpec> catalog_algebras() {
    std::vector<GradingSpec> out;
    for (int m = 2; m <= 8; ++m) out.emplace_back(m, 0, 1);
    for (int n = 2; n <= 6; n += 2) out.emplace_back(0, n, -1);
    out.emplace_back(1, 2, 1);
    out.emplace_back(2, 2, 1);
    out.emplace_back(2, 4, 1);
    out.emplace_back(4, 2, 1);
    return out;
}

}  // namespace ospk
