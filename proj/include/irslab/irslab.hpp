// SPDX-License-Identifier: Apache-2.0
//
// irslab - capacity and allocation toolkit for IRS-aided multi-antenna broadcast channels
// Copyright (C) 2026 The irslab authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef IRSLAB_IRSLAB_HPP
#define IRSLAB_IRSLAB_HPP

#include "irslab/allocation.hpp"
#include "irslab/array_response.hpp"
#include "irslab/beamform.hpp"
#include "irslab/capacity.hpp"
#include "irslab/channel.hpp"
#include "irslab/config.hpp"
#include "irslab/errors.hpp"
#include "irslab/harness.hpp"
#include "irslab/parallel.hpp"
#include "irslab/random.hpp"
#include "irslab/scenario.hpp"
#include "irslab/scheduler.hpp"
#include "irslab/units.hpp"

#endif
