// irslink - link-level Monte Carlo simulator for IRS-aided multi-user MIMO downlink
// Copyright (C) 2026 the irslink authors
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

#ifndef IRSLINK_IRSLINK_HPP
#define IRSLINK_IRSLINK_HPP

#include "access.hpp"
#include "campaign.hpp"
#include "config_io.hpp"
#include "fading.hpp"
#include "linalg.hpp"
#include "reflect.hpp"
#include "reports.hpp"
#include "rng.hpp"
#include "scenario.hpp"
#include "types.hpp"
#include "version.hpp"

#endif
