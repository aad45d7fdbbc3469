#include "dirac_ladder/channels.hpp"

#include "dirac_ladder/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace dirac_ladder {

double zeta_from_charge(int Z, double alpha) {
    if (Z <= 0) throw InvalidQuantumNumber("nuclear charge Z must be positive, got " + std::to_string(Z));
    if (!(alpha > 0.0)) throw InvalidQuantumNumber("fine-structure constant must be positive");
    return Z * alpha;
}

HalfInteger HalfInteger::from_double(double x) {
    const double twice = 2.0 * x;
    const double rounded = std::round(twice);
    if (!std::isfinite(x) || std::abs(twice - rounded) > 1e-9 || rounded < 1.0
        || static_cast<long long>(rounded) % 2 == 0) {
        std::ostringstream os;
        os << "j = " << x << " is not a positive half-odd-integer";
        throw InvalidQuantumNumber(os.str());
    }
    return HalfInteger{static_cast<int>(rounded)};
}

Sign sign_from_int(int e) {
    if (e == 1) return Sign::plus;
    if (e == -1) return Sign::minus;
    throw InvalidQuantumNumber("epsilon must be +1 or -1, got " + std::to_string(e));
}

std::string to_string(Sign s) { return s == Sign::plus ? "+1" : "-1"; }

std::string Channel::describe() const {
    std::ostringstream os;
    os.precision(12);
    os << "j=" << j_.twice << "/2 eps=" << to_string(epsilon_) << " zeta=" << zeta_;
    return os.str();
}

Channel make_channel(HalfInteger j, Sign epsilon, double zeta) {
    if (j.twice < 1 || j.twice % 2 == 0)
        throw InvalidQuantumNumber("j must be a positive half-odd-integer");
    if (!(zeta > 0.0) || !std::isfinite(zeta))
        throw InvalidQuantumNumber("zeta must be positive and finite");

    const double half_width = j.value() + 0.5;
    if (zeta >= half_width) {
        std::ostringstream os;
        os.precision(12);
        os << "supercritical channel: zeta=" << zeta << " >= j+1/2=" << half_width;
        throw Supercritical(os.str());
    }

    Channel c;
    c.j_ = j;
    c.epsilon_ = epsilon;
    c.zeta_ = zeta;
    c.tau_ = to_int(epsilon) * half_width;
    // (h − ζ)(h + ζ) keeps s accurate when ζ is close to the critical value.
    c.s_ = std::sqrt((half_width - zeta) * (half_width + zeta));
    c.lambda_ = c.s_ + 0.5;
    c.omega_ = j.value() * (j.value() + 1.0) - zeta * zeta;
    return c;
}

BoundState bound_energy(const Channel& channel, int k, double mass) {
    if (k < 0) throw DomainError("radial index k must be non-negative");
    if (!(mass > 0.0)) throw DomainError("mass must be positive");
    if (!is_physical(channel.epsilon(), k))
        throw UnphysicalState("k=0 with eps=+1 has no solution of the first-order system ("
                              + channel.describe() + ")");

    BoundState st{channel};
    st.k = k;
    st.mass = mass;
    st.mu = channel.lambda() + k;
    const double shifted = channel.s() + k;  // μ − 1/2
    const double zeta = channel.zeta();
    const double root = std::hypot(shifted, zeta);
    st.energy = mass * shifted / root;
    st.wavenumber = mass * zeta / root;
    st.nu = st.wavenumber / (mass + st.energy);
    return st;
}

double mu_from_energy(double energy, double zeta, double mass) {
    if (!(energy > 0.0) || !(energy < mass))
        throw DomainError("energy must lie in (0, m)");
    const double kappa = std::sqrt((mass - energy) * (mass + energy));
    return zeta * energy / kappa + 0.5;
}

SpectrumTable spectrum_table(double zeta, HalfInteger j_max, int k_max, double mass) {
    if (k_max < 0) throw DomainError("k_max must be non-negative");
    if (!(mass > 0.0)) throw DomainError("mass must be positive");
    SpectrumTable table;
    for (int twice_j = 1; twice_j <= j_max.twice; twice_j += 2) {
        for (Sign eps : {Sign::minus, Sign::plus}) {
            try {
                const Channel channel = make_channel(HalfInteger{twice_j}, eps, zeta);
                for (int k = 0; k <= k_max; ++k) {
                    if (!is_physical(eps, k)) continue;
                    table.states.push_back(bound_energy(channel, k, mass));
                }
            } catch (const Supercritical& e) {
                table.warnings.push_back(e.what());
            }
        }
    }
    std::stable_sort(table.states.begin(), table.states.end(), [](const BoundState& a, const BoundState& b) {
        if (a.energy != b.energy) return a.energy < b.energy;
        if (a.channel.j() != b.channel.j()) return a.channel.j() < b.channel.j();
        if (a.k != b.k) return a.k < b.k;
        return to_int(a.channel.epsilon()) < to_int(b.channel.epsilon());
    });
    return table;
}

}  // namespace dirac_ladder
