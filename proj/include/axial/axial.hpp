// Copyright 2026 The axial-sampler Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "axial/distributions.hpp"
#include "axial/error.hpp"
#include "axial/io.hpp"
#include "axial/matrix.hpp"
#include "axial/rng.hpp"
#include "axial/sampler.hpp"
#include "axial/spectral.hpp"
#include "axial/validation.hpp"
