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

#ifndef CLIQUEPROBE_PIPELINE_HPP_
#define CLIQUEPROBE_PIPELINE_HPP_

#include "cliqueprobe/clique_probing.hpp"
#include "cliqueprobe/cliques.hpp"
#include "cliqueprobe/model.hpp"
#include "cliqueprobe/probing.hpp"
#include "cliqueprobe/propagate.hpp"
#include "cliqueprobe/report.hpp"

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace cliqueprobe
{

enum class Mode
{
   kDefault,
   kClique
};

inline std::string
to_string( Mode mode )
{
   return mode == Mode::kDefault ? "default" : "clique";
}

struct PipelineConfig
{
   CliqueProbingConfig clique;
   ProbingLimits limits;
   PropagationSettings settings;
   std::uint64_t seed = 0;
};

struct PipelineRun
{
   RunReport report;
   Ledger ledger;
   std::optional<CliqueProbingRun> clique_run;
};

/// Default mode probes every scored binary. Clique mode probes the selected
/// cliques first and resumes standard probing on the binaries they left
/// untouched.
inline PipelineRun
run_pipeline( const Problem& problem, Mode mode, const PipelineConfig& config = {} )
{
   using clock = std::chrono::steady_clock;

   PipelineRun run;
   const std::vector<Clique> cliques = detect_cliques( problem );
   const ScoreVector scores = incidence_score( problem, cliques );

   const auto start = clock::now();
   ProbingState state( problem, config.settings );
   if( config.limits.work_budget )
      state.set_work_budget( *config.limits.work_budget );

   std::vector<int> pool;
   if( mode == Mode::kDefault )
   {
      for( int j = 0; j < problem.num_vars(); ++j )
         if( scores.defined( j ) )
            pool.push_back( j );
   }
   else
   {
      run.clique_run = run_clique_probing( problem, cliques, scores, config.clique, state );
      run.ledger.append( run.clique_run->ledger );
      pool = run.clique_run->untouched;
   }

   if( !run.ledger.infeasible() )
   {
      const std::vector<int> ranked = rank_candidates( pool, scores, config.seed );
      run.ledger.append( run_standard_probing( problem, ranked, config.limits, state ) );
   }
   const double elapsed = std::chrono::duration<double>( clock::now() - start ).count();

   RunReport& report = run.report;
   report.instance = problem.name();
   report.mode = to_string( mode );
   report.elapsed_seconds = elapsed;
   report.fixings = run.ledger.fixings();
   report.substitutions = run.ledger.substitutions();
   report.bound_changes = run.ledger.bound_changes();
   report.implications = run.ledger.implications();
   report.clique_upgrades = run.ledger.clique_upgrades();
   report.propagations = run.ledger.propagations();
   report.propagations_per_second =
       elapsed > 0.0 ? static_cast<double>( report.propagations ) / elapsed : 0.0;
   report.reductions_per_propagation = reductions_per_propagation( report );
   if( run.clique_run )
      for( const CliqueRecord& r : run.clique_run->records )
         report.cliques.push_back( { r.size, r.assignments_probed, r.aborted, r.upgraded } );
   report.infeasible = run.ledger.infeasible();
   return run;
}

} // namespace cliqueprobe

#endif
