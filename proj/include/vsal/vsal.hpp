#ifndef VSAL_VSAL_HPP_
#define VSAL_VSAL_HPP_

#include "vsal/errors.hpp"
#include "vsal/fixation_density.hpp"
#include "vsal/frame.hpp"
#include "vsal/io.hpp"
#include "vsal/metrics.hpp"
#include "vsal/path_selection.hpp"
#include "vsal/pipeline.hpp"
#include "vsal/predictors.hpp"
#include "vsal/saliency_map.hpp"
#include "vsal/st_fusion.hpp"

#endif  // VSAL_VSAL_HPP_
