// Copyright 2026 The Morphlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "morphlab/activity.hpp"
#include "morphlab/error.hpp"
#include "morphlab/external_command.hpp"
#include "morphlab/lineage.hpp"
#include "morphlab/morphism.hpp"
#include "morphlab/persistence.hpp"
#include "morphlab/random.hpp"
#include "morphlab/runtime.hpp"
#include "morphlab/script.hpp"
#include "morphlab/session.hpp"
#include "morphlab/specification.hpp"
#include "morphlab/strategy.hpp"
#include "morphlab/test_case.hpp"
#include "morphlab/test_pool.hpp"
#include "morphlab/text.hpp"
#include "morphlab/uuid.hpp"
