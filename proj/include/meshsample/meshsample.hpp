#pragma once

#include "meshsample/batch.hpp"
#include "meshsample/bench.hpp"
#include "meshsample/error.hpp"
#include "meshsample/format.hpp"
#include "meshsample/inversion.hpp"
#include "meshsample/io.hpp"
#include "meshsample/mesh.hpp"
#include "meshsample/random.hpp"
#include "meshsample/rejection.hpp"
#include "meshsample/stats.hpp"
#include "meshsample/triangle_select.hpp"
#include "meshsample/validation.hpp"
#include "meshsample/weights.hpp"
