#include "qisurf/constants.hpp"

#include <cmath>

namespace qisurf {

RadiusLadder RadiusLadder::asymptotic(double M) {
    return RadiusLadder{400.0 * std::pow(M, 5)};
}

int RadiusLadder::hop_base() const {
    return std::max(1, static_cast<int>(std::floor(R)));
}

QiConstants qi_constants(double M, double A, double K) {
    if (M < 1.0) throw Error("qi_constants: M must be >= 1");
    if (A < 0.0) throw Error("qi_constants: A must be >= 0");
    if (K < 0.0) throw Error("qi_constants: K must be >= 0");
    QiConstants c;
    c.epsilon = 1.0 / (33.0 * M * M);
    c.girth_bound = 3400.0 * std::pow(M, 5) * K;
    c.ladder = RadiusLadder::asymptotic(M);
    c.degenerate = (c.girth_bound == 0.0);
    return c;
}

double genus_bound_log3(double M) {
    if (M < 1.0) throw Error("genus_bound_log3: M must be >= 1");
    return 3400.0 * std::pow(M, 6);
}

}  // namespace qisurf
