#ifndef MVGAS_IO_HPP
#define MVGAS_IO_HPP

#include <string>

#include "json.hpp"
#include "mvgas/relative_energy.hpp"
#include "mvgas/verifier.hpp"
#include "mvgas/young_measure.hpp"

namespace mvgas {

inline constexpr const char* kVersion = "0.1.0";

/// Shortest round-trip decimal representation (byte-stable outputs).
std::string format_double(double v);

/// Trajectory CSV: header t,x[,y],rho,mx[,my],E; one row per (sample, cell).
std::string trajectory_csv(const FieldTrajectory& traj);

/// Young-measure JSON, schema "mvgas.young_measure/1": per cell, coordinate
/// arrays of atoms and weights; the initial slice under "initial".
nlohmann::json measure_json(const EmpiricalYoungMeasure& U);

/// Verification report JSON, schema "mvgas.verification/1":
/// clause -> { residuals | margins, tolerance, pass }.
nlohmann::json report_json(const VerificationReport& rep);

/// Defect ledger JSON (energy defect, member gaps, concentration proxy mass).
nlohmann::json defect_json(const DefectLedger& led);

/// Weak-strong monitor CSV per member: t,relative_energy,L1_rho,L1_m,L1_E.
std::string weak_strong_csv(const WeakStrongSeries& s);

nlohmann::json weak_strong_json(const WeakStrongReport& rep);

nlohmann::json scaling_json(const ScalingReport& rep);

void write_file(const std::string& path, const std::string& content);

} // namespace mvgas

#endif
