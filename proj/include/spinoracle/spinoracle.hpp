// Copyright 2026 The spinoracle Authors
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

#pragma once

#include "spinoracle/classical_baseline.hpp"
#include "spinoracle/codewords.hpp"
#include "spinoracle/errors.hpp"
#include "spinoracle/io.hpp"
#include "spinoracle/linalg.hpp"
#include "spinoracle/minimize.hpp"
#include "spinoracle/oracle_circuit.hpp"
#include "spinoracle/qfunction.hpp"
#include "spinoracle/random.hpp"
#include "spinoracle/rational.hpp"
#include "spinoracle/spin_core.hpp"
#include "spinoracle/squeezing.hpp"
