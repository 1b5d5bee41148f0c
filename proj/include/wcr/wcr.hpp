/*
 *   Copyright 2026 The wcr Authors
 *
 *   Licensed under the Apache License, Version 2.0 (the "License");
 *   you may not use this file except in compliance with the License.
 *   You may obtain a copy of the License at
 *
 *       http://www.apache.org/licenses/LICENSE-2.0
 *
 *   Unless required by applicable law or agreed to in writing, software
 *   distributed under the License is distributed on an "AS IS" BASIS,
 *   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 *   See the License for the specific language governing permissions and
 *   limitations under the License.
 */

#pragma once

// Umbrella header.

#include "wcr/attack.hpp"
#include "wcr/auth.hpp"
#include "wcr/compose.hpp"
#include "wcr/descriptor.hpp"
#include "wcr/dist.hpp"
#include "wcr/entropy.hpp"
#include "wcr/errors.hpp"
#include "wcr/field.hpp"
#include "wcr/hash_family.hpp"
#include "wcr/measure.hpp"
#include "wcr/protocol.hpp"
#include "wcr/rational.hpp"
#include "wcr/report.hpp"
#include "wcr/ucsim.hpp"
