#include "mvgas/gas.hpp"

#include <cmath>
#include <sstream>

namespace mvgas {

XReal kinetic_energy_ext(double rho, const Vec3& m, double floor) {
    if (rho < 0.0) throw DomainError("kinetic_energy_ext: rho < 0");
    if (rho > floor) return XReal(0.5 * m.norm2() / rho);
    if (m.norm() <= floor) return XReal(0.0);
    return XReal::pos_inf();
}

XReal specific_entropy(double rho, double theta, const GasParams& gas, double floor) {
    if (rho < 0.0 || theta < 0.0)
        throw DomainError("specific_entropy: negative rho or theta");
    if (rho > floor && theta > floor)
        return XReal(gas.c_v * std::log(theta) - std::log(rho));
    if (rho <= floor && theta > floor) return XReal::pos_inf();
    return XReal::neg_inf();  // theta -> 0 (with or without vacuum)
}

PrimitiveState make_primitive(double rho, const Vec3& u, double theta,
                              const GasParams& gas, double floor) {
    if (rho < 0.0 || theta < 0.0)
        throw DomainError("make_primitive: negative rho or theta");
    PrimitiveState prim;
    prim.rho = rho;
    prim.u = rho > floor ? u : Vec3{};
    prim.theta = theta;
    prim.p = rho * theta;
    prim.s = specific_entropy(rho, theta, gas, floor);
    return prim;
}

ConservativeState primitive_to_conservative(const PrimitiveState& prim,
                                            const GasParams& gas) {
    if (prim.rho < 0.0 || prim.theta < 0.0)
        throw DomainError("primitive_to_conservative: negative rho or theta");
    ConservativeState cons;
    cons.rho = prim.rho;
    cons.m = prim.rho * prim.u;
    cons.E = 0.5 * prim.rho * prim.u.norm2() + gas.c_v * prim.rho * prim.theta;
    return cons;
}

PrimitiveState conservative_to_primitive(const ConservativeState& cons,
                                         const GasParams& gas, double floor) {
    if (!cons.in_Q())
        throw DomainError("conservative_to_primitive: state outside Q");
    PrimitiveState prim;
    if (cons.rho <= floor) {
        if (cons.m.norm() > floor) {
            std::ostringstream os;
            os << "conservative_to_primitive: rho = " << cons.rho
               << " at vacuum with |m| = " << cons.m.norm()
               << " (kinetic energy is +inf)";
            throw NonPhysicalStateError(os.str());
        }
        prim.rho = cons.rho;
        prim.u = Vec3{};
        prim.theta = 0.0;
        prim.p = 0.0;
        prim.s = XReal::neg_inf();
        return prim;
    }
    const double kin = 0.5 * cons.m.norm2() / cons.rho;
    const double eint = cons.E - kin;
    if (eint < -floor * (1.0 + cons.E)) {
        std::ostringstream os;
        os << "conservative_to_primitive: internal energy " << eint
           << " negative beyond tolerance (E = " << cons.E << ", kin = " << kin << ")";
        throw NegativeInternalEnergyError(os.str());
    }
    prim.rho = cons.rho;
    prim.u = cons.m * (1.0 / cons.rho);
    prim.theta = std::max(eint, 0.0) / (gas.c_v * cons.rho);
    prim.p = prim.rho * prim.theta;
    prim.s = specific_entropy(prim.rho, prim.theta, gas, floor);
    return prim;
}

double internal_energy(const ConservativeState& cons, double floor) {
    XReal kin = kinetic_energy_ext(cons.rho, cons.m, floor);
    if (kin.is_pos_inf())
        throw NonPhysicalStateError("internal_energy: non-physical state");
    return cons.E - kin.value();
}

double pressure_cons(const ConservativeState& cons, const GasParams& gas, double floor) {
    if (cons.rho <= floor) return 0.0;
    return internal_energy(cons, floor) / gas.c_v;
}

double temperature_cons(const ConservativeState& cons, const GasParams& gas, double floor) {
    if (cons.rho <= floor) return 0.0;
    return internal_energy(cons, floor) / (gas.c_v * cons.rho);
}

XReal specific_entropy_cons(const ConservativeState& cons, const GasParams& gas,
                            double floor) {
    if (cons.rho > floor) {
        const double kin = 0.5 * cons.m.norm2() / cons.rho;
        const double eint = cons.E - kin;
        if (eint <= 0.0) return XReal::neg_inf();
        return XReal(gas.c_v * std::log(eint / (gas.c_v * std::pow(cons.rho, gas.gamma))));
    }
    return XReal::neg_inf();
}

XReal total_entropy(const ConservativeState& cons, const GasParams& gas, double floor) {
    if (cons.rho > floor) {
        XReal s = specific_entropy_cons(cons, gas, floor);
        if (!s.finite()) return XReal::neg_inf();
        return XReal(cons.rho * s.value());
    }
    if (cons.m.norm() <= floor && cons.E >= -floor) return XReal(0.0);
    return XReal::neg_inf();
}

EntropyPartials total_entropy_partials(const ConservativeState& cons,
                                       const GasParams& gas, double floor) {
    if (cons.rho <= floor)
        throw DomainError("total_entropy_partials: reference on the boundary of Q");
    const double kin = 0.5 * cons.m.norm2() / cons.rho;
    const double eint = cons.E - kin;
    if (eint <= floor)
        throw DomainError("total_entropy_partials: reference has no interior temperature");
    const double theta = eint / (gas.c_v * cons.rho);
    const Vec3 u = cons.m * (1.0 / cons.rho);
    const double s = gas.c_v * std::log(theta) - std::log(cons.rho);
    EntropyPartials d;
    d.d_rho = s - (gas.c_v + 1.0) + 0.5 * u.norm2() / theta;
    d.d_m = u * (-1.0 / theta);
    d.d_E = 1.0 / theta;
    return d;
}

} // namespace mvgas
