#include "secjam/fixtures.hpp"

namespace secjam {

std::string example3x5_text() {
  return "# 3 5 1\n"
         "1.1027 0.3856 0.6719 1.2101 0.7043\n"
         "0.7423 1.0735 0.6558 1.0006 0.8943\n"
         "0.7554 1.4772 0.2498 1.3572 3.5391\n"
         "\n"
         "3.3624 6.0713 3.4125 3.0584 0.4987\n"
         "8.1741 7.0607 4.1047 0.9860 1.6860\n"
         "0.9028 2.0636 0.5605 3.0277 4.5346\n";
}

ChannelRealization example3x5() { return load_channels(example3x5_text()); }

}  // namespace secjam
