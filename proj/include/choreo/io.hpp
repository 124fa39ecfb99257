#pragma once

#include <iostream>
#include <span>
#include <string>

#include <json.hpp>

#include "choreo/action.hpp"
#include "choreo/minimize.hpp"
#include "choreo/nbody.hpp"

namespace choreo {

// shortest round-trippable decimal
std::string format_double(double v);

// header: k,re_1,im_1,...,re_d,im_d ; one row per mode
void write_loop_csv(std::ostream& os, const FourierLoop& loop);
FourierLoop read_loop_csv(std::istream& is);

// header: k,d_k,lambda_k
void write_spectrum_csv(std::ostream& os, const Spectrum& spectrum);

// header: t,body,x_1..x_d,v_1..v_d
void write_trajectory_csv(std::ostream& os, const Trajectory& traj);

// header: sigma,seed,predicted_min,achieved_min,gap,circle_distance,iterations,converged
void write_scan_csv(std::ostream& os, std::span<const ScanRow> rows);

nlohmann::json params_json(const ModelParams& params);
nlohmann::json breakdown_json(const ActionBreakdown& br, double sigma, int K, int M);

}  // namespace choreo
