// Copyright 2026 The ACQST Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ACQST_ACQST_H
#define ACQST_ACQST_H

#include "acqst/common.h"
#include "acqst/density_matrix.h"
#include "acqst/experiments.h"
#include "acqst/gate_matrix.h"
#include "acqst/gf2.h"
#include "acqst/parallel.h"
#include "acqst/purity.h"
#include "acqst/rng.h"
#include "acqst/simulator.h"
#include "acqst/sqst.h"
#include "acqst/stats.h"
#include "acqst/tomography.h"

#endif  // ACQST_ACQST_H
