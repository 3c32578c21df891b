/* * * * * * * * * * * * * * * * * * * * * * * * * * * * * * * * * * * * * * */
/*                                                                           */
/*               This file is part of the program and library                */
/*    cliqueprobe --- clique probing presolve for mixed-integer programs     */
/*                                                                           */
/* Copyright (C) 2026 The cliqueprobe authors                                */
/*                                                                           */
/* Licensed under the Apache License, Version 2.0 (the "License");           */
/* you may not use this file except in compliance with the License.          */
/* You may obtain a copy of the License at                                   */
/*                                                                           */
/*     http://www.apache.org/licenses/LICENSE-2.0                            */
/*                                                                           */
/* Unless required by applicable law or agreed to in writing, software       */
/* distributed under the License is distributed on an "AS IS" BASIS,         */
/* WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.  */
/* See the License for the specific language governing permissions and       */
/* limitations under the License.                                            */
/*                                                                           */
/* * * * * * * * * * * * * * * * * * * * * * * * * * * * * * * * * * * * * * */

#ifndef CLIQUEPROBE_HPP_
#define CLIQUEPROBE_HPP_

#include "cliqueprobe/clique_probing.hpp"
#include "cliqueprobe/cliques.hpp"
#include "cliqueprobe/model.hpp"
#include "cliqueprobe/mps.hpp"
#include "cliqueprobe/pipeline.hpp"
#include "cliqueprobe/probing.hpp"
#include "cliqueprobe/propagate.hpp"
#include "cliqueprobe/report.hpp"

#endif
