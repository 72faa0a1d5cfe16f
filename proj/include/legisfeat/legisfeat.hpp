// Copyright 2026 The legisfeat Authors.
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

#include "legisfeat/absentee.hpp"
#include "legisfeat/affiliation.hpp"
#include "legisfeat/analytics.hpp"
#include "legisfeat/augment.hpp"
#include "legisfeat/csv.hpp"
#include "legisfeat/engagement.hpp"
#include "legisfeat/errors.hpp"
#include "legisfeat/evaluation.hpp"
#include "legisfeat/gazetteer.hpp"
#include "legisfeat/parallel.hpp"
#include "legisfeat/stance.hpp"
#include "legisfeat/text.hpp"
#include "legisfeat/transcript.hpp"
