#pragma once

#include "csg/error.hpp"
#include "csg/rational.hpp"
#include "csg/matrix.hpp"
#include "csg/linalg.hpp"
#include "csg/poly.hpp"
#include "csg/model_space.hpp"
#include "csg/metrics.hpp"
#include "csg/grassmann.hpp"
#include "csg/spectral.hpp"
#include "csg/parallel.hpp"
#include "csg/verify.hpp"
#include "csg/report.hpp"
#include "csg/io.hpp"
#include "csg/reproduce.hpp"
