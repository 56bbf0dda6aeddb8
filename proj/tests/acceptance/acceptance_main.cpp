#include <cstdlib>
#include <iostream>

#include "qnet_app/acceptance.hpp"
#include "qnet_app/config.hpp"

int main() {
  using namespace qnet::app;
  const char* env = std::getenv("QNET_TABLE1_CONFIG");
  const qnet::NetworkModel device = build_device(Config::load(env ? env : QNET_TEST_CONFIG));

  int failures = 0;
  for (const auto& c : acceptance_criteria()) {
    const CriterionResult r = evaluate_criterion(c.id, device);
    std::cout << summary_line(r) << '\n';
    for (const auto& line : r.checks) std::cout << "    " << line << '\n';
    std::cout.flush();
    if (!r.pass) ++failures;
  }
  std::cout << (acceptance_criteria().size() - static_cast<std::size_t>(failures)) << "/"
            << acceptance_criteria().size() << " criteria passed\n";
  return failures == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
