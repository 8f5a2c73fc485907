// Three blocks of buyers with surpluses 6 > 3 > 0, a few edges from lower
// blocks into higher ones, and the minimum-sink-side cut on each interval of
// the sweep. Also runs FIX-B from samples/data.

#include "eqflow/balanced.hpp"
#include "eqflow/eqnet_io.hpp"
#include "eqflow/generators.hpp"
#include "eqflow/report.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

int main() {
  using namespace eqflow;

  const EqualityNetwork net = gen_blocks(parse_block_spec("2:10:6,3:8:3,2:5:0"), 42, 4);
  const BalancedFlowResult result = balanced_flow(net);
  std::cout << balanced_text(net, result);

  const FlowNetwork fn = to_flow_network(net);
  std::cout << "\ncut per interval\n";
  for (const auto& iv : result.profile.cut_at) {
    std::cout << "  " << (iv.lo_closed ? "[" : "(") << to_string(iv.lo) << ", "
              << (iv.hi ? to_string(*iv.hi) + "]" : std::string("inf)")) << "  " << describe_source_side(fn, iv.cut)
              << "\n";
  }

  std::ifstream in(std::string(SAMPLE_DATA_DIR) + "/fix_b.eqnet");
  std::stringstream text;
  text << in.rdbuf();
  const EqualityNetwork fix_b = parse_eqnet(text.str());
  const BalancedFlowResult b = balanced_flow(fix_b);
  std::cout << "\nfix_b: value " << to_string(b.value) << ", surpluses " << rationals_text(b.surpluses) << ", "
            << (verify_balanced(fix_b, b.flow).is_balanced ? "balanced" : "NOT balanced") << "\n";
}
