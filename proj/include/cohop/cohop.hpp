// Copyright 2026 The cohop Authors
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

#ifndef COHOP_COHOP_HPP
#define COHOP_COHOP_HPP

#include "cohop/coherent.hpp"
#include "cohop/error.hpp"
#include "cohop/fock.hpp"
#include "cohop/quadrature.hpp"
#include "cohop/report.hpp"
#include "cohop/schwinger.hpp"
#include "cohop/special.hpp"
#include "cohop/su11.hpp"
#include "cohop/suites.hpp"

#endif
