#pragma once

#include "abch/complex.hpp"
#include "abch/laplacian.hpp"
#include "abch/metric.hpp"
#include "abch/model.hpp"

#include <string>
#include <vector>

namespace fixtures {

inline std::string path(const std::string& file) { return std::string(ABCH_MODELS_DIR) + "/" + file; }

inline abch::ComplexModel model(const std::string& name) { return abch::load_model(path(name + ".cplx")); }

inline const std::vector<std::string>& names() {
  static const std::vector<std::string> all{"torus1", "torus2", "iwasawa", "kodaira_thurston"};
  return all;
}

inline abch::ExactEngine engine(const abch::ComplexModel& m, long first = 1) {
  const abch::ExactComplex c = abch::build_complex(m);
  const abch::MetricSpec spec = first == 1 ? abch::identity_metric(m.n) : abch::diagonal_metric(m.n, first);
  return abch::ExactEngine(c, abch::build_metric(c, *spec.exact));
}

inline abch::ExactEngine engine(const std::string& name, long first = 1) { return engine(model(name), first); }

}  // namespace fixtures
