#include "anharmonic/fit.hpp"

#include <algorithm>
#include <cmath>

#include "anharmonic/errors.hpp"

namespace anharmonic::fit {

LineFit line(std::span<const double> x, std::span<const double> y, std::span<const double> w) {
    if (x.size() != y.size() || x.size() < 2 || (!w.empty() && w.size() != x.size())) {
        throw Error(ErrorKind::Precondition, "line fit needs >= 2 points and matching lengths");
    }
    double sw = 0.0, sx = 0.0, sy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double wi = w.empty() ? 1.0 : w[i];
        sw += wi;
        sx += wi * x[i];
        sy += wi * y[i];
    }
    const double mx = sx / sw;
    const double my = sy / sw;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double wi = w.empty() ? 1.0 : w[i];
        sxx += wi * (x[i] - mx) * (x[i] - mx);
        sxy += wi * (x[i] - mx) * (y[i] - my);
        syy += wi * (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0.0) throw Error(ErrorKind::Precondition, "line fit needs distinct abscissae");
    LineFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    f.r2 = syy > 0.0 ? sxy * sxy / (sxx * syy) : 1.0;
    return f;
}

LineFit loglog(std::span<const double> x, std::span<const double> y, std::span<const double> w) {
    std::vector<double> lx(x.size()), ly(y.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0) || y[i] == 0.0) {
            throw Error(ErrorKind::Precondition, "log-log fit needs positive x and nonzero y");
        }
        lx[i] = std::log(x[i]);
        ly[i] = std::log(std::abs(y[i]));
    }
    return line(lx, ly, w);
}

std::vector<double> upper_envelope(std::span<const double> y) {
    std::vector<double> env(y.size());
    double m = 0.0;
    for (std::size_t i = y.size(); i-- > 0;) {
        m = std::max(m, std::abs(y[i]));
        env[i] = m;
    }
    return env;
}

bool non_increasing(std::span<const double> y) {
    for (std::size_t i = 1; i < y.size(); ++i) {
        if (std::abs(y[i]) > std::abs(y[i - 1])) return false;
    }
    return true;
}

}  // namespace anharmonic::fit
