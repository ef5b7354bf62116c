// Copyright 2026 The ipszeta Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef IPSZETA_IPSZETA_HPP
#define IPSZETA_IPSZETA_HPP

#include "ipszeta/configuration.hpp"
#include "ipszeta/dk.hpp"
#include "ipszeta/eigensolver.hpp"
#include "ipszeta/errors.hpp"
#include "ipszeta/global_operator.hpp"
#include "ipszeta/io.hpp"
#include "ipszeta/local_operator.hpp"
#include "ipszeta/parallel.hpp"
#include "ipszeta/random_operators.hpp"
#include "ipszeta/report.hpp"
#include "ipszeta/spectral.hpp"
#include "ipszeta/spectrum.hpp"
#include "ipszeta/traces.hpp"
#include "ipszeta/verify.hpp"
#include "ipszeta/version.hpp"
#include "ipszeta/zeta.hpp"

#endif  // IPSZETA_IPSZETA_HPP
