// Convenience umbrella header.
#pragma once

#include "sideout/csv.hpp"
#include "sideout/dataset.hpp"
#include "sideout/date.hpp"
#include "sideout/errors.hpp"
#include "sideout/explain/kernel_shap.hpp"
#include "sideout/explain/protodash.hpp"
#include "sideout/explain/shapley.hpp"
#include "sideout/features.hpp"
#include "sideout/metrics.hpp"
#include "sideout/models/brcg.hpp"
#include "sideout/models/lda.hpp"
#include "sideout/models/logreg.hpp"
#include "sideout/models/mlp.hpp"
#include "sideout/models/model.hpp"
#include "sideout/models/svm.hpp"
#include "sideout/pipeline.hpp"
#include "sideout/rng.hpp"
#include "sideout/split.hpp"
#include "sideout/synth.hpp"
#include "sideout/types.hpp"
