#pragma once

#include <string>

namespace deltalab {

/// CSV of the printed and model-consistent delta curves for figure 1, 2 or 3
/// (2, 3 and 10 clients) over t in [0, 4 pi] with W = omega = 1. Figure 1
/// also carries the horizontal lines at +-2 whose separation equals SC = 4.
/// `resolution` is the number of rows, endpoints included.
std::string figure_csv(int which, int resolution);

}  // namespace deltalab
