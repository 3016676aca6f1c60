#pragma once

// Run configuration and its text format.
//
//   # comment
//   backend = analytic            # analytic | numeric
//   [atom]                        # rates/frequencies in units of gamma_ab
//   omega_mu = 2
//   ...
//   [relaxation]
//   ground = 0.0001               # every gamma_jk with j, k != a
//   gamma_C = 0.0001              # gamma_cb = gamma_cb'
//   gamma_Cp = 0.0001             # gamma_c'b = gamma_c'b'
//   gamma_a_bp = 1                # single element (symmetric), levels a b bp c cp
//   r_b = 5e-05
//   r_cp = 0.023
//   [medium]                      # optional
//   density = 1e+15               # cm^-3
//   wavelength = 8e-05            # cm
//   [doppler]                     # optional
//   sigma_delta = 0.05
//   sigma_probe = 0
//   quadrature_order = 41
//   rule = adaptive               # adaptive | hermite
//   tolerance = 1e-10
//   [sweep]
//   min = -2
//   max = 2
//   points = 2001
//   [output]
//   path = fig1.csv               # empty: standard output
//   format = csv                  # csv | json
//
// Within [relaxation], `ground` applies first, then gamma_C / gamma_Cp, then
// single elements, independent of their order in the file.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include "digs/model.hpp"

namespace digs {

struct SweepGrid {
  double min = -2.0;
  double max = 2.0;
  std::size_t points = 2001;

  bool operator==(const SweepGrid&) const = default;
};

enum class OutputFormat { csv, json };

struct OutputSpec {
  std::string path;
  OutputFormat format = OutputFormat::csv;

  bool operator==(const OutputSpec&) const = default;
};

struct RunConfig {
  AtomParams atom;
  RelaxationModel relaxation;
  std::optional<MediumParams> medium;
  std::optional<DopplerSpec> doppler;
  SweepGrid sweep;
  Backend backend = Backend::analytic;
  OutputSpec output;

  bool operator==(const RunConfig&) const = default;
};

// Throws ConfigError with the offending line number.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::string& path);

// Shortest round-trip number formatting: parse_config(to_config_text(c)) == c.
std::string to_config_text(const RunConfig& config);

// Atom/relaxation/medium/doppler validation plus grid and backend-domain
// checks.
ValidationReport validate(const RunConfig& config);

}  // namespace digs
