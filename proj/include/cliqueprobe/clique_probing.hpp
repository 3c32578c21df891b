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

#ifndef CLIQUEPROBE_CLIQUE_PROBING_HPP_
#define CLIQUEPROBE_CLIQUE_PROBING_HPP_

#include "cliqueprobe/cliques.hpp"
#include "cliqueprobe/model.hpp"
#include "cliqueprobe/probing.hpp"
#include "cliqueprobe/propagate.hpp"

#include <algorithm>
#include <cstddef>
#include <functional>
#include <string>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace cliqueprobe
{

/// Assignment indices within one clique: 0 is the all-zero assignment, k >= 1
/// sets member k-1 to one and every other member to zero.
inline constexpr int kAllZeroAssignment = 0;

struct CliqueAssignment
{
   int clique;
   /// member index set to one; empty for the all-zero assignment
   std::optional<int> active;

   int
   index() const
   {
      return active ? *active + 1 : kAllZeroAssignment;
   }
};

/// Componentwise min lower / max upper over the processed assignments.
struct BoundTracker
{
   std::vector<double> min_lower;
   std::vector<double> max_upper;

   bool
   operator==( const BoundTracker& ) const = default;
};

/// Order statistics of the values a variable was fixed to, taken over the
/// processed assignments that fixed it, plus whether every processed
/// assignment fixed it. Six values per variable; the flag rides along.
struct SubstitutionTracker
{
   std::vector<double> lowest;
   std::vector<int> argmin;
   std::vector<double> second_lowest;
   std::vector<double> highest;
   std::vector<int> argmax;
   std::vector<double> second_highest;
   std::vector<char> fixed_in_all;

   bool
   operator==( const SubstitutionTracker& ) const = default;
};

struct TrackerPair
{
   BoundTracker bounds;
   SubstitutionTracker subs;
   /// assignment indices in processing order
   std::vector<int> processed;

   bool
   operator==( const TrackerPair& ) const = default;
};

inline TrackerPair
init_trackers( std::size_t nvars )
{
   TrackerPair t;
   t.bounds.min_lower.assign( nvars, kInfinity );
   t.bounds.max_upper.assign( nvars, -kInfinity );
   t.subs.lowest.assign( nvars, kInfinity );
   t.subs.argmin.assign( nvars, -1 );
   t.subs.second_lowest.assign( nvars, kInfinity );
   t.subs.highest.assign( nvars, -kInfinity );
   t.subs.argmax.assign( nvars, -1 );
   t.subs.second_highest.assign( nvars, -kInfinity );
   t.subs.fixed_in_all.assign( nvars, 1 );
   return t;
}

inline TrackerPair
init_trackers( const DomainState& global_bounds, std::span<const int> /*members*/ )
{
   return init_trackers( global_bounds.size() );
}

namespace detail
{

inline void
insert_fixed_value( SubstitutionTracker& s, std::size_t j, double value,
                    int assignment )
{
   if( value < s.lowest[j] )
   {
      s.second_lowest[j] = s.lowest[j];
      s.lowest[j] = value;
      s.argmin[j] = assignment;
   }
   else if( value < s.second_lowest[j] )
      s.second_lowest[j] = value;

   if( value > s.highest[j] )
   {
      s.second_highest[j] = s.highest[j];
      s.highest[j] = value;
      s.argmax[j] = assignment;
   }
   else if( value > s.second_highest[j] )
      s.second_highest[j] = value;
}

} // namespace detail

/// Folds the propagated domain of one consistent assignment into B and I.
inline void
update_trackers( TrackerPair& trackers, int assignment,
                 const DomainState& propagated )
{
   BoundTracker& b = trackers.bounds;
   SubstitutionTracker& s = trackers.subs;
   for( std::size_t j = 0; j < propagated.size(); ++j )
   {
      const double lo = propagated.lower[j];
      const double up = propagated.upper[j];
      b.min_lower[j] = std::min( b.min_lower[j], lo );
      b.max_upper[j] = std::max( b.max_upper[j], up );
      if( lo != up )
         s.fixed_in_all[j] = 0;
      else
         detail::insert_fixed_value( s, j, lo, assignment );
   }
   trackers.processed.push_back( assignment );
}

namespace detail
{

/// Whether the fixed values seen so far still admit a single outlier among
/// otherwise equal values.
inline bool
substitution_possible( const SubstitutionTracker& s, std::size_t j )
{
   if( !s.fixed_in_all[j] )
      return false;
   if( s.lowest[j] == s.highest[j] )
      return true;
   const bool low_outlier = s.lowest[j] < s.second_lowest[j] &&
                            s.second_lowest[j] == s.highest[j];
   const bool high_outlier = s.highest[j] > s.second_highest[j] &&
                             s.second_highest[j] == s.lowest[j];
   return low_outlier || high_outlier;
}

} // namespace detail

/// Upper bound on the bound changes and substitutions the clique can still
/// produce. Neither count can grow as more assignments are processed.
inline std::size_t
max_potential_reductions( const TrackerPair& trackers, const DomainState& base,
                          std::span<const char> excluded )
{
   std::size_t count = 0;
   const BoundTracker& b = trackers.bounds;
   for( std::size_t j = 0; j < base.size(); ++j )
   {
      if( !excluded.empty() && excluded[j] )
         continue;
      if( b.min_lower[j] > base.lower[j] )
         ++count;
      if( b.max_upper[j] < base.upper[j] )
         ++count;
      if( detail::substitution_possible( trackers.subs, j ) )
         ++count;
   }
   return count;
}

/// Combines trackers that processed disjoint assignment sets of one clique.
/// The result equals a single tracker run over all assignments in index
/// order; equal values keep the smaller assignment index.
inline TrackerPair
merge_trackers( std::span<const TrackerPair> locals )
{
   if( locals.empty() )
      throw std::invalid_argument( "merge_trackers: nothing to merge" );
   const std::size_t n = locals.front().bounds.min_lower.size();
   TrackerPair merged = init_trackers( n );

   for( const TrackerPair& local : locals )
   {
      if( local.bounds.min_lower.size() != n )
         throw std::invalid_argument( "merge_trackers: size mismatch" );
      merged.processed.insert( merged.processed.end(), local.processed.begin(),
                               local.processed.end() );
   }
   std::sort( merged.processed.begin(), merged.processed.end() );
   const auto dup =
       std::adjacent_find( merged.processed.begin(), merged.processed.end() );
   if( dup != merged.processed.end() )
      throw std::invalid_argument( "merge_trackers: overlapping assignment index " +
                                   std::to_string( *dup ) );

   std::vector<double> low, high;
   for( std::size_t j = 0; j < n; ++j )
   {
      low.clear();
      high.clear();
      bool fixed = true;
      for( const TrackerPair& local : locals )
      {
         const SubstitutionTracker& s = local.subs;
         merged.bounds.min_lower[j] =
             std::min( merged.bounds.min_lower[j], local.bounds.min_lower[j] );
         merged.bounds.max_upper[j] =
             std::max( merged.bounds.max_upper[j], local.bounds.max_upper[j] );
         fixed = fixed && s.fixed_in_all[j];
         low.push_back( s.lowest[j] );
         low.push_back( s.second_lowest[j] );
         high.push_back( s.highest[j] );
         high.push_back( s.second_highest[j] );
      }
      // each local holds its two extreme values, so the merged two are
      // among them
      std::sort( low.begin(), low.end() );
      std::sort( high.begin(), high.end(), std::greater<>() );

      SubstitutionTracker& m = merged.subs;
      m.fixed_in_all[j] = fixed ? 1 : 0;
      m.lowest[j] = low[0];
      m.second_lowest[j] = low[1];
      m.highest[j] = high[0];
      m.second_highest[j] = high[1];
      for( const TrackerPair& local : locals )
      {
         const SubstitutionTracker& s = local.subs;
         if( s.argmin[j] >= 0 && s.lowest[j] == m.lowest[j] &&
             ( m.argmin[j] < 0 || s.argmin[j] < m.argmin[j] ) )
            m.argmin[j] = s.argmin[j];
         if( s.argmax[j] >= 0 && s.highest[j] == m.highest[j] &&
             ( m.argmax[j] < 0 || s.argmax[j] < m.argmax[j] ) )
            m.argmax[j] = s.argmax[j];
      }
   }
   return merged;
}

struct CliqueProbingConfig
{
   /// abort once at most this many reductions remain possible; unset
   /// disables the early abort
   std::optional<std::size_t> abort_threshold = 1;
   CliqueSelection selection;
   std::size_t initial_batch_size = 2;
   std::size_t unsuccessful_streak = 2;
   double min_reductions_per_propagation = 3.0;
};

struct CliqueProbeResult
{
   Ledger ledger;
   bool aborted = false;
   bool upgraded = false;
   std::size_t assignments_probed = 0;
   TrackerPair trackers;
};

/// Probes every assignment of one clique from `bounds`: the all-zero
/// assignment for at-most-one cliques, then each member set to one.
/// Fixings and upgrades are recorded as they are found; bound changes,
/// substitutions and implications only once all assignments are processed.
inline CliqueProbeResult
probe_single_clique( const Problem& problem, const DomainState& bounds,
                     const Clique& clique, int clique_index,
                     const CliqueProbingConfig& config = {},
                     const PropagationSettings& settings = {} )
{
   CliqueProbeResult result;
   const std::size_t nvars = static_cast<std::size_t>( problem.num_vars() );
   const std::size_t n = clique.size();
   result.trackers = init_trackers( nvars );

   std::vector<char> excluded( nvars, 0 );
   for( std::size_t j = 0; j < nvars; ++j )
      if( bounds.lower[j] == bounds.upper[j] )
         excluded[j] = 1;
   for( int var : clique.members )
      excluded[static_cast<std::size_t>( var )] = 1;

   std::vector<VarFixing> fixings;
   fixings.reserve( n );
   for( int var : clique.members )
      fixings.push_back( { var, 0.0 } );

   std::vector<Implication> pending;
   std::size_t consistent = 0;

   auto should_abort = [&]( bool members_left ) {
      return config.abort_threshold && members_left && !result.trackers.processed.empty() &&
             max_potential_reductions( result.trackers, bounds, excluded ) <=
                 *config.abort_threshold;
   };

   if( clique.kind == CliqueKind::kAtMostOne )
   {
      PropagationResult r = propagate_to_fixpoint( problem, bounds, fixings, settings );
      ++result.assignments_probed;
      if( !r.consistent() )
      {
         result.ledger.record(
             CliqueUpgrade{ clique_index, clique.origin, clique.scale } );
         result.upgraded = true;
      }
      else
      {
         update_trackers( result.trackers, kAllZeroAssignment, r.bounds );
         ++consistent;
      }
   }

   for( std::size_t i = 0; i < n; ++i )
   {
      fixings[i].value = 1.0;
      PropagationResult r = propagate_to_fixpoint( problem, bounds, fixings, settings );
      fixings[i].value = 0.0;
      ++result.assignments_probed;

      const int x = clique.members[i];
      if( !r.consistent() )
         result.ledger.record( Fixing{ x, 0.0 } );
      else
      {
         update_trackers( result.trackers, static_cast<int>( i ) + 1, r.bounds );
         ++consistent;
         for( std::size_t j = 0; j < nvars; ++j )
         {
            if( excluded[j] )
               continue;
            const VarKind kind = problem.variable( static_cast<int>( j ) ).kind;
            if( is_bound_improvement( kind, BoundSide::kLower, bounds.lower[j],
                                      r.bounds.lower[j], settings ) )
               pending.push_back( { x, 1, static_cast<int>( j ), BoundSide::kLower,
                                    r.bounds.lower[j] } );
            if( is_bound_improvement( kind, BoundSide::kUpper, bounds.upper[j],
                                      r.bounds.upper[j], settings ) )
               pending.push_back( { x, 1, static_cast<int>( j ), BoundSide::kUpper,
                                    r.bounds.upper[j] } );
         }
      }

      if( should_abort( i + 1 < n ) )
      {
         result.aborted = true;
         return result;
      }
   }

   if( consistent == 0 )
   {
      result.ledger.record( GlobalInfeasible{} );
      return result;
   }

   const BoundTracker& b = result.trackers.bounds;
   const SubstitutionTracker& s = result.trackers.subs;

   std::vector<Transaction> deductions;
   detail::emit_union_bounds( problem, bounds, b.min_lower, b.max_upper,
                              excluded, settings, deductions );

   std::vector<char> substituted( nvars, 0 );
   if( result.trackers.processed.size() >= 2 )
   {
      for( std::size_t j = 0; j < nvars; ++j )
      {
         if( excluded[j] || !s.fixed_in_all[j] )
            continue;
         const bool low_outlier = s.lowest[j] < s.second_lowest[j] &&
                                  s.second_lowest[j] == s.highest[j] &&
                                  s.argmin[j] >= 1;
         const bool high_outlier = s.highest[j] > s.second_highest[j] &&
                                   s.second_highest[j] == s.lowest[j] &&
                                   s.argmax[j] >= 1;
         int outlier = -1;
         double outlier_value = 0.0, others = 0.0;
         if( low_outlier )
         {
            outlier = s.argmin[j];
            outlier_value = s.lowest[j];
            others = s.second_lowest[j];
         }
         else if( high_outlier )
         {
            outlier = s.argmax[j];
            outlier_value = s.highest[j];
            others = s.second_highest[j];
         }
         if( outlier < 1 || std::abs( outlier_value - others ) <= settings.feastol )
            continue;
         deductions.emplace_back(
             Substitution{ static_cast<int>( j ), others, outlier_value - others,
                           clique.members[static_cast<std::size_t>( outlier - 1 )] } );
         substituted[j] = 1;
      }
   }

   for( const Implication& imp : pending )
   {
      const auto j = static_cast<std::size_t>( imp.var );
      if( substituted[j] )
         continue;
      const VarKind kind = problem.variable( imp.var ).kind;
      const double global = imp.side == BoundSide::kLower ? b.min_lower[j] : b.max_upper[j];
      if( is_bound_improvement( kind, imp.side, global, imp.value, settings ) )
         deductions.emplace_back( imp );
   }

   for( Transaction& t : deductions )
      result.ledger.record( std::move( t ) );
   return result;
}

struct CliqueRecord
{
   int clique = -1;
   std::size_t size = 0;
   std::size_t assignments_probed = 0;
   bool aborted = false;
   bool upgraded = false;
};

struct CliqueProbingRun
{
   Ledger ledger;
   /// binaries left for standard probing
   std::vector<int> untouched;
   bool disabled = true;
   std::vector<CliqueRecord> records;
};

namespace detail
{

/// The clique restricted to members still free in `global`; empty when a
/// member is fixed to one or fewer than two members remain.
inline std::optional<Clique>
restrict_clique( const Clique& clique, const DomainState& global )
{
   Clique restricted = clique;
   restricted.members.clear();
   for( int var : clique.members )
   {
      const auto j = static_cast<std::size_t>( var );
      if( global.lower[j] == global.upper[j] )
      {
         if( global.lower[j] == 1.0 )
            return std::nullopt;
         continue;
      }
      restricted.members.push_back( var );
   }
   if( restricted.members.size() < 2 )
      return std::nullopt;
   return restricted;
}

} // namespace detail

/// Selects cliques by average score and probes them in batches of growing
/// size. Cliques of one batch see the state at batch start; their results
/// are committed in order once the batch ends. Stops after
/// `unsuccessful_streak` consecutive cliques below the reductions per
/// propagation target.
inline CliqueProbingRun
run_clique_probing( const Problem& problem, std::span<const Clique> cliques,
                    const ScoreVector& scores, const CliqueProbingConfig& config,
                    ProbingState& state )
{
   CliqueProbingRun run;
   for( int j = 0; j < problem.num_vars(); ++j )
      if( problem.variable( j ).kind == VarKind::kBinary && !state.global().is_fixed( j ) )
         run.untouched.push_back( j );

   if( state.infeasible() )
   {
      run.ledger.record( GlobalInfeasible{} );
      run.disabled = false;
      return run;
   }

   const std::vector<CliqueScore> sorted = score_cliques( cliques, scores.values() );
   const std::vector<int> selected = select_cliques( cliques, sorted, config.selection );

   std::vector<char> removed( static_cast<std::size_t>( problem.num_vars() ), 0 );
   std::size_t streak = 0;
   std::size_t next = 0;
   std::size_t batch_size = std::max<std::size_t>( config.initial_batch_size, 1 );
   bool stop = false;

   while( !stop && next < selected.size() )
   {
      const std::size_t end = std::min( selected.size(), next + batch_size );
      const DomainState snapshot_global = state.global();
      const DomainState snapshot = state.propagated();
      std::vector<CliqueProbeResult> batch;
      std::size_t reserved = 0;

      for( ; next < end; ++next )
      {
         const int index = selected[next];
         const Clique& original = cliques[static_cast<std::size_t>( index )];
         std::optional<Clique> clique = detail::restrict_clique( original, snapshot_global );
         if( !clique )
            continue;

         const std::size_t needed =
             clique->size() + ( clique->kind == CliqueKind::kAtMostOne ? 1 : 0 );
         if( state.remaining_work() < reserved + needed )
         {
            stop = true;
            break;
         }

         CliqueProbeResult result = probe_single_clique(
             problem, snapshot, *clique, index, config, state.settings() );
         reserved += result.assignments_probed;

         run.records.push_back( { index, clique->size(), result.assignments_probed,
                                  result.aborted, result.upgraded } );
         for( int var : original.members )
            removed[static_cast<std::size_t>( var )] = 1;

         const double reds_per_prop =
             static_cast<double>( result.ledger.reductions() ) /
             static_cast<double>( std::max<std::size_t>( result.assignments_probed, 1 ) );
         const bool infeasible = result.ledger.infeasible();
         batch.push_back( std::move( result ) );

         if( infeasible )
         {
            stop = true;
            break;
         }
         streak = reds_per_prop < config.min_reductions_per_propagation ? streak + 1 : 0;
         if( streak >= config.unsuccessful_streak )
         {
            stop = true;
            ++next;
            break;
         }
      }

      for( const CliqueProbeResult& result : batch )
      {
         run.ledger.add_propagations( result.assignments_probed );
         state.consume_work( result.assignments_probed );
         if( !commit_all( state, result.ledger.transactions(), run.ledger ) )
         {
            stop = true;
            break;
         }
      }
      batch_size *= 2;
   }

   std::erase_if( run.untouched,
                  [&]( int j ) { return removed[static_cast<std::size_t>( j )] != 0; } );
   run.disabled = run.ledger.reductions() == 0 && run.ledger.clique_upgrades() == 0 &&
                  !run.ledger.infeasible();
   return run;
}

} // namespace cliqueprobe

#endif
