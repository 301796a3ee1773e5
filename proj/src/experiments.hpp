#pragma once

#include "geometry.hpp"

#include <string>

namespace acsf {

// Command bodies shared by the CLI and the C API. Each takes the experiment
// config as a JSON string, writes its artifacts under out_dir (atomically:
// everything or nothing), and returns the report as a JSON string. Config
// errors raise invalid_input; anything the solvers raise passes through.
//
// Common config keys (all optional unless stated):
//   curve:  {kind: circle|ellipse|fourier|random_fourier|polygon|polygon_file,
//            radius | a,b | base,cos[],sin[] | amplitude,modes | points[][] |
//            path, r_smooth}
//   n:      sample count (default 256)
//   safety: CFL safety factor (default 0.2)
//   area_floor_fraction: stop at this fraction of the initial area
//                        (default 1e-4)
//   seed:   RNG seed for random_fourier (default 0)
std::string run_evolve(const std::string& config_json,
                       const std::string& out_dir);

// classify keys: milestones (default 6, schedule A0/4^k), mvee_tol (1e-8).
std::string run_classify(const std::string& config_json,
                         const std::string& out_dir);

// invariance keys: shear (2x2 unimodular, default [[1,1],[0,1]]),
// lambda (default 16), t_fraction (default 0.5), tolerance (default 1e-3).
std::string run_invariance(const std::string& config_json,
                           const std::string& out_dir);

// arrival keys: grid (default 256), r_min/r_max residual annulus (0.2/0.9),
// concavity_level_fraction of the extinction estimate (default 0.9).
std::string run_arrival(const std::string& config_json,
                        const std::string& out_dir);

// ndcheck keys: n_max (default 5, at most 8), lambdas (default
// [0.25, 1, 4, 16]), t_fraction (default 0.5).
std::string run_ndcheck(const std::string& config_json,
                        const std::string& out_dir);

// Dispatch by command name (evolve|classify|invariance|arrival|ndcheck).
std::string run_command(const std::string& command,
                        const std::string& config_json,
                        const std::string& out_dir);

// The initial curve described by the config (shared with tests).
SupportCurve curve_from_config(const std::string& config_json);

} // namespace acsf
