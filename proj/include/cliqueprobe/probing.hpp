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

#ifndef CLIQUEPROBE_PROBING_HPP_
#define CLIQUEPROBE_PROBING_HPP_

#include "cliqueprobe/cliques.hpp"
#include "cliqueprobe/model.hpp"
#include "cliqueprobe/propagate.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <functional>
#include <limits>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <span>
#include <vector>

namespace cliqueprobe
{

/// Probing score per variable; defined for binaries that are not fixed.
class ScoreVector
{
 public:
   ScoreVector() = default;

   explicit ScoreVector( std::size_t nvars )
       : scores_( nvars, 0.0 ), defined_( nvars, 0 )
   {
   }

   void
   set( int var, double score )
   {
      scores_[static_cast<std::size_t>( var )] = score;
      defined_[static_cast<std::size_t>( var )] = 1;
   }

   double
   operator[]( int var ) const
   {
      return scores_[static_cast<std::size_t>( var )];
   }

   bool
   defined( int var ) const
   {
      return defined_[static_cast<std::size_t>( var )] != 0;
   }

   std::span<const double>
   values() const
   {
      return scores_;
   }

   std::size_t
   size() const
   {
      return scores_.size();
   }

 private:
   std::vector<double> scores_;
   std::vector<char> defined_;
};

using ScoringFunction =
    std::function<ScoreVector( const Problem&, std::span<const Clique> )>;

/// Column size plus half a point per clique containing the variable.
inline ScoreVector
incidence_score( const Problem& problem, std::span<const Clique> cliques )
{
   const int n = problem.num_vars();
   std::vector<int> in_cliques( static_cast<std::size_t>( n ), 0 );
   for( const Clique& c : cliques )
      for( int var : c.members )
         ++in_cliques[static_cast<std::size_t>( var )];

   ScoreVector scores( static_cast<std::size_t>( n ) );
   for( int j = 0; j < n; ++j )
   {
      const Variable& v = problem.variable( j );
      if( v.kind != VarKind::kBinary || v.lower == v.upper )
         continue;
      scores.set( j, static_cast<double>( problem.column( j ).size() ) +
                         0.5 * in_cliques[static_cast<std::size_t>( j )] );
   }
   return scores;
}

inline ScoreVector
score_variables( const Problem& problem, std::span<const Clique> cliques,
                 const ScoringFunction& scoring = incidence_score )
{
   return scoring( problem, cliques );
}

inline ScoreVector
score_variables( const Problem& problem )
{
   const std::vector<Clique> cliques = detect_cliques( problem );
   return incidence_score( problem, cliques );
}

/// Orders a candidate pool by descending score. Ties fall back to the
/// variable index, or to a seeded permutation when seed != 0.
inline std::vector<int>
rank_candidates( std::span<const int> pool, const ScoreVector& scores,
                 std::uint64_t seed = 0 )
{
   std::vector<int> tie_rank;
   if( seed != 0 )
   {
      tie_rank.resize( scores.size() );
      std::iota( tie_rank.begin(), tie_rank.end(), 0 );
      std::mt19937_64 rng( seed );
      std::shuffle( tie_rank.begin(), tie_rank.end(), rng );
   }
   std::vector<int> ranked;
   for( int var : pool )
      if( scores.defined( var ) )
         ranked.push_back( var );
   std::stable_sort( ranked.begin(), ranked.end(), [&]( int a, int b ) {
      if( scores[a] != scores[b] )
         return scores[a] > scores[b];
      if( !tie_rank.empty() )
         return tie_rank[static_cast<std::size_t>( a )] <
                tie_rank[static_cast<std::size_t>( b )];
      return a < b;
   } );
   return ranked;
}

// ---------------------------------------------------------------------------
// Local probing state
// ---------------------------------------------------------------------------

enum class CommitStatus
{
   kApplied,
   kStale,
   kInfeasible
};

/// The domain both probing drivers work on. `global` tracks the problem
/// bounds with all committed reductions; `propagated` is its propagation
/// fixpoint and is the starting point of every probe. Bound changes count as
/// reductions only when they improve on `propagated`.
class ProbingState
{
 public:
   explicit ProbingState( const Problem& problem,
                          PropagationSettings settings = {} )
       : problem_( &problem ), settings_( settings ),
         global_( DomainState::from_problem( problem ) ),
         substituted_( static_cast<std::size_t>( problem.num_vars() ), 0 ),
         work_budget_( 10 * static_cast<std::size_t>( problem.num_rows() ) )
   {
      PropagationResult root = propagate_to_fixpoint( problem, global_, {}, settings_ );
      if( root.consistent() )
         propagated_ = std::move( root.bounds );
      else
      {
         propagated_ = global_;
         infeasible_ = true;
      }
   }

   const Problem&
   problem() const
   {
      return *problem_;
   }

   const PropagationSettings&
   settings() const
   {
      return settings_;
   }

   const DomainState&
   global() const
   {
      return global_;
   }

   const DomainState&
   propagated() const
   {
      return propagated_;
   }

   bool
   infeasible() const
   {
      return infeasible_;
   }

   bool
   is_substituted( int var ) const
   {
      return substituted_[static_cast<std::size_t>( var )] != 0;
   }

   void
   set_work_budget( std::size_t calls )
   {
      work_budget_ = calls;
   }

   std::size_t
   work_used() const
   {
      return work_used_;
   }

   std::size_t
   remaining_work() const
   {
      return work_used_ >= work_budget_ ? 0 : work_budget_ - work_used_;
   }

   void
   consume_work( std::size_t calls )
   {
      work_used_ += calls;
   }

   /// Re-checks a deduction against the current state and applies it.
   CommitStatus
   commit( const Transaction& transaction )
   {
      if( infeasible_ )
         return CommitStatus::kInfeasible;

      if( const auto* fix = std::get_if<Fixing>( &transaction ) )
         return commit_fixing( *fix );
      if( const auto* chg = std::get_if<BoundChange>( &transaction ) )
         return commit_bound( *chg );
      if( const auto* sub = std::get_if<Substitution>( &transaction ) )
      {
         const auto t = static_cast<std::size_t>( sub->target );
         const double a = sub->offset;
         const double ab = sub->offset + sub->slope;
         const double tol = settings_.feastol;
         if( sub->target == sub->source || substituted_[t] ||
             is_substituted( sub->source ) || a < propagated_.lower[t] - tol ||
             a > propagated_.upper[t] + tol || ab < propagated_.lower[t] - tol ||
             ab > propagated_.upper[t] + tol )
            return CommitStatus::kStale;
         substituted_[t] = 1;
         return CommitStatus::kApplied;
      }
      if( const auto* up = std::get_if<CliqueUpgrade>( &transaction ) )
         return upgraded_.insert( up->clique ).second ? CommitStatus::kApplied
                                                      : CommitStatus::kStale;
      if( std::holds_alternative<Implication>( transaction ) )
         return CommitStatus::kApplied;

      infeasible_ = true;
      return CommitStatus::kInfeasible;
   }

 private:
   CommitStatus
   repropagate( int var )
   {
      const int changed[] = { var };
      PropagationResult r =
          propagate_changes( *problem_, std::move( propagated_ ), changed, settings_ );
      if( !r.consistent() )
      {
         infeasible_ = true;
         return CommitStatus::kInfeasible;
      }
      propagated_ = std::move( r.bounds );
      return CommitStatus::kApplied;
   }

   CommitStatus
   commit_fixing( const Fixing& fix )
   {
      const auto j = static_cast<std::size_t>( fix.var );
      if( global_.lower[j] == fix.value && global_.upper[j] == fix.value )
         return CommitStatus::kStale;
      if( fix.value < propagated_.lower[j] - settings_.feastol ||
          fix.value > propagated_.upper[j] + settings_.feastol )
      {
         infeasible_ = true;
         return CommitStatus::kInfeasible;
      }
      global_.lower[j] = global_.upper[j] = fix.value;
      if( propagated_.lower[j] == fix.value && propagated_.upper[j] == fix.value )
         return CommitStatus::kApplied;
      propagated_.lower[j] = propagated_.upper[j] = fix.value;
      return repropagate( fix.var );
   }

   CommitStatus
   commit_bound( const BoundChange& chg )
   {
      const auto j = static_cast<std::size_t>( chg.var );
      const VarKind kind = problem_->variable( chg.var ).kind;
      const double tol = settings_.feastol;
      if( chg.side == BoundSide::kLower )
      {
         if( !is_bound_improvement( kind, chg.side, propagated_.lower[j],
                                    chg.value, settings_ ) )
            return CommitStatus::kStale;
         if( chg.value > propagated_.upper[j] + tol )
         {
            infeasible_ = true;
            return CommitStatus::kInfeasible;
         }
         propagated_.lower[j] = std::min( chg.value, propagated_.upper[j] );
         global_.lower[j] = std::max( global_.lower[j], propagated_.lower[j] );
      }
      else
      {
         if( !is_bound_improvement( kind, chg.side, propagated_.upper[j],
                                    chg.value, settings_ ) )
            return CommitStatus::kStale;
         if( chg.value < propagated_.lower[j] - tol )
         {
            infeasible_ = true;
            return CommitStatus::kInfeasible;
         }
         propagated_.upper[j] = std::max( chg.value, propagated_.lower[j] );
         global_.upper[j] = std::min( global_.upper[j], propagated_.upper[j] );
      }
      return repropagate( chg.var );
   }

   const Problem* problem_;
   PropagationSettings settings_;
   DomainState global_;
   DomainState propagated_;
   std::vector<char> substituted_;
   std::set<int> upgraded_;
   bool infeasible_ = false;
   std::size_t work_budget_;
   std::size_t work_used_ = 0;
};

/// Commits deductions in order and records the accepted ones. Returns false
/// once the state became infeasible.
inline bool
commit_all( ProbingState& state, std::span<const Transaction> deductions,
            Ledger& ledger, std::size_t* accepted = nullptr )
{
   for( const Transaction& t : deductions )
   {
      const CommitStatus status = state.commit( t );
      if( status == CommitStatus::kApplied )
      {
         ledger.record( t );
         if( accepted != nullptr && !std::holds_alternative<Implication>( t ) )
            ++*accepted;
      }
      else if( status == CommitStatus::kInfeasible )
      {
         ledger.record( GlobalInfeasible{} );
         return false;
      }
   }
   return true;
}

// ---------------------------------------------------------------------------
// Standard probing
// ---------------------------------------------------------------------------

struct ProbeOutcome
{
   int var = -1;
   PropagationResult result0;
   PropagationResult result1;
   std::vector<Transaction> deductions;
};

struct ProbingLimits
{
   std::size_t max_variables = std::numeric_limits<std::size_t>::max();
   std::size_t stall_window = 10;
   std::size_t min_successes = 1;
   /// propagation calls; 10 * rows when unset
   std::optional<std::size_t> work_budget;
};

namespace detail
{

/// Emits the union-of-domains deductions for every eligible variable: a
/// Fixing when the union is a single point, BoundChanges otherwise.
inline void
emit_union_bounds( const Problem& problem, const DomainState& base,
                   std::span<const double> union_lower,
                   std::span<const double> union_upper,
                   std::span<const char> excluded,
                   const PropagationSettings& settings,
                   std::vector<Transaction>& out )
{
   for( int z = 0; z < problem.num_vars(); ++z )
   {
      const auto j = static_cast<std::size_t>( z );
      if( excluded[j] )
         continue;
      const VarKind kind = problem.variable( z ).kind;
      const double lo = union_lower[j];
      const double up = union_upper[j];
      const bool lower_better =
          is_bound_improvement( kind, BoundSide::kLower, base.lower[j], lo, settings );
      const bool upper_better =
          is_bound_improvement( kind, BoundSide::kUpper, base.upper[j], up, settings );
      if( !lower_better && !upper_better )
         continue;
      if( lo == up )
      {
         out.emplace_back( Fixing{ z, lo } );
         continue;
      }
      if( lower_better )
         out.emplace_back( BoundChange{ z, BoundSide::kLower, lo } );
      if( upper_better )
         out.emplace_back( BoundChange{ z, BoundSide::kUpper, up } );
   }
}

} // namespace detail

/// Probes x = 0 and x = 1 from `bounds` and derives fixings, bound changes,
/// substitutions and implications.
inline ProbeOutcome
probe_variable( const Problem& problem, const DomainState& bounds, int x,
                const PropagationSettings& settings = {} )
{
   ProbeOutcome outcome;
   outcome.var = x;
   const VarFixing zero[] = { { x, 0.0 } };
   const VarFixing one[] = { { x, 1.0 } };
   outcome.result0 = propagate_to_fixpoint( problem, bounds, zero, settings );
   outcome.result1 = propagate_to_fixpoint( problem, bounds, one, settings );

   const bool feasible0 = outcome.result0.consistent();
   const bool feasible1 = outcome.result1.consistent();
   auto& out = outcome.deductions;

   if( !feasible0 && !feasible1 )
   {
      out.emplace_back( GlobalInfeasible{} );
      return outcome;
   }
   if( !feasible0 )
      out.emplace_back( Fixing{ x, 1.0 } );
   if( !feasible1 )
      out.emplace_back( Fixing{ x, 0.0 } );

   const std::size_t n = static_cast<std::size_t>( problem.num_vars() );
   std::vector<char> excluded( n, 0 );
   excluded[static_cast<std::size_t>( x )] = 1;
   for( std::size_t j = 0; j < n; ++j )
      if( bounds.lower[j] == bounds.upper[j] )
         excluded[j] = 1;

   const DomainState& d0 = outcome.result0.bounds;
   const DomainState& d1 = outcome.result1.bounds;
   std::vector<double> lo( n ), up( n );
   for( std::size_t j = 0; j < n; ++j )
   {
      if( feasible0 && feasible1 )
      {
         lo[j] = std::min( d0.lower[j], d1.lower[j] );
         up[j] = std::max( d0.upper[j], d1.upper[j] );
      }
      else
      {
         const DomainState& d = feasible0 ? d0 : d1;
         lo[j] = d.lower[j];
         up[j] = d.upper[j];
      }
   }
   detail::emit_union_bounds( problem, bounds, lo, up, excluded, settings, out );

   if( !feasible0 || !feasible1 )
      return outcome;

   std::vector<char> substituted( n, 0 );
   for( std::size_t j = 0; j < n; ++j )
   {
      if( excluded[j] )
         continue;
      if( d0.lower[j] == d0.upper[j] && d1.lower[j] == d1.upper[j] &&
          std::abs( d1.lower[j] - d0.lower[j] ) > settings.feastol )
      {
         out.emplace_back( Substitution{ static_cast<int>( j ), d0.lower[j],
                                         d1.lower[j] - d0.lower[j], x } );
         substituted[j] = 1;
      }
   }

   for( std::size_t j = 0; j < n; ++j )
   {
      if( excluded[j] || substituted[j] )
         continue;
      const VarKind kind = problem.variable( static_cast<int>( j ) ).kind;
      const int z = static_cast<int>( j );
      for( int value = 0; value <= 1; ++value )
      {
         const DomainState& d = value == 0 ? d0 : d1;
         if( is_bound_improvement( kind, BoundSide::kLower, lo[j], d.lower[j], settings ) )
            out.emplace_back( Implication{ x, value, z, BoundSide::kLower, d.lower[j] } );
         if( is_bound_improvement( kind, BoundSide::kUpper, up[j], d.upper[j], settings ) )
            out.emplace_back( Implication{ x, value, z, BoundSide::kUpper, d.upper[j] } );
      }
   }
   return outcome;
}

/// Sequential probing over `candidates` (descending score). Each outcome is
/// committed to `state` before the next probe.
inline Ledger
run_standard_probing( const Problem& problem, std::span<const int> candidates,
                      const ProbingLimits& limits, ProbingState& state )
{
   Ledger ledger;
   if( state.infeasible() )
   {
      ledger.record( GlobalInfeasible{} );
      return ledger;
   }

   std::deque<std::size_t> window;
   std::size_t window_sum = 0;
   std::size_t probed = 0;

   for( int x : candidates )
   {
      if( probed >= limits.max_variables )
         break;
      if( state.remaining_work() < 2 )
         break;
      if( problem.variable( x ).kind != VarKind::kBinary || state.global().is_fixed( x ) )
         continue;

      ProbeOutcome outcome =
          probe_variable( problem, state.propagated(), x, state.settings() );
      ++probed;
      ledger.add_propagations( 2 );
      state.consume_work( 2 );

      std::size_t successes = 0;
      if( !commit_all( state, outcome.deductions, ledger, &successes ) )
         break;

      window.push_back( successes );
      window_sum += successes;
      if( window.size() > limits.stall_window )
      {
         window_sum -= window.front();
         window.pop_front();
      }
      if( limits.stall_window > 0 && window.size() == limits.stall_window &&
          window_sum < limits.min_successes )
         break;
   }
   return ledger;
}

inline Ledger
run_standard_probing( const Problem& problem, std::span<const int> candidates,
                      const ProbingLimits& limits )
{
   ProbingState state( problem );
   if( limits.work_budget )
      state.set_work_budget( *limits.work_budget );
   return run_standard_probing( problem, candidates, limits, state );
}

} // namespace cliqueprobe

#endif
