// potential.cpp — External potentials

#include "thermobath/potential.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "thermobath/errors.hpp"

namespace thermobath {

Potential Potential::harmonic(double mass, double omega0) {
    if (!(mass > 0.0) || !(omega0 > 0.0))
        throw ParameterError("potential", "harmonic potential needs mass > 0 and omega0 > 0");
    Potential p;
    p.kind_ = PotentialKind::harmonic;
    p.stiffness_ = mass * omega0 * omega0;
    return p;
}

Potential Potential::tabulated(std::vector<double> x, std::vector<double> V) {
    if (x.size() != V.size() || x.size() < 2)
        throw ParameterError("potential", "table needs at least two (x, V) rows");
    Potential p;
    p.kind_ = PotentialKind::tabulated;
    p.table_ = MonotoneCubic(Eigen::Map<Eigen::ArrayXd>(x.data(), static_cast<Eigen::Index>(x.size())),
                             Eigen::Map<Eigen::ArrayXd>(V.data(), static_cast<Eigen::Index>(V.size())));
    return p;
}

Potential Potential::from_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParameterError("potential", "cannot open potential table '" + path + "'");
    std::vector<double> xs, vs;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream row(line);
        double x = 0.0, v = 0.0;
        if (!(row >> x >> v)) {
            if (xs.empty()) continue;
            throw ParameterError("potential", "malformed row in '" + path + "'");
        }
        xs.push_back(x);
        vs.push_back(v);
    }
    return tabulated(std::move(xs), std::move(vs));
}

double Potential::value(double x) const {
    switch (kind_) {
    case PotentialKind::none: return 0.0;
    case PotentialKind::harmonic: return 0.5 * stiffness_ * x * x;
    case PotentialKind::tabulated: return table_.value(x);
    }
    return 0.0;
}

double Potential::derivative(double x) const {
    switch (kind_) {
    case PotentialKind::none: return 0.0;
    case PotentialKind::harmonic: return stiffness_ * x;
    case PotentialKind::tabulated: return table_.derivative(x);
    }
    return 0.0;
}

double Potential::curvature(double x) const {
    switch (kind_) {
    case PotentialKind::none: return 0.0;
    case PotentialKind::harmonic: return stiffness_;
    case PotentialKind::tabulated: return table_.second_derivative(x);
    }
    return 0.0;
}

} // namespace thermobath
