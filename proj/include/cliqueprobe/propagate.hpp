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

#ifndef CLIQUEPROBE_PROPAGATE_HPP_
#define CLIQUEPROBE_PROPAGATE_HPP_

#include "cliqueprobe/model.hpp"

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

namespace cliqueprobe
{

/// Current lower and upper bound per variable.
struct DomainState
{
   std::vector<double> lower;
   std::vector<double> upper;

   static DomainState
   from_problem( const Problem& problem )
   {
      return { problem.lower_bounds(), problem.upper_bounds() };
   }

   std::size_t
   size() const
   {
      return lower.size();
   }

   bool
   is_fixed( int j ) const
   {
      return lower[static_cast<std::size_t>( j )] ==
             upper[static_cast<std::size_t>( j )];
   }

   /// componentwise containment: this ⊆ other
   bool
   within( const DomainState& other ) const
   {
      for( std::size_t j = 0; j < lower.size(); ++j )
         if( lower[j] < other.lower[j] || upper[j] > other.upper[j] )
            return false;
      return true;
   }

   bool
   operator==( const DomainState& ) const = default;
};

struct PropagationSettings
{
   double feastol = kFeasTol;
   double abs_improvement = 1e-9;
   double rel_improvement = 1e-6;
   int max_rounds = 100;
};

enum class PropagationStatus
{
   kConsistent,
   kInfeasible
};

struct PropagationResult
{
   PropagationStatus status = PropagationStatus::kConsistent;
   /// unspecified when infeasible
   DomainState bounds;
   int rounds = 0;
   int tightenings = 0;

   bool
   consistent() const
   {
      return status == PropagationStatus::kConsistent;
   }

   bool
   operator==( const PropagationResult& ) const = default;
};

struct ActivityRange
{
   double min;
   double max;
};

struct VarFixing
{
   int var;
   double value;
};

struct BoundTightening
{
   int var;
   BoundSide side;
   double value;
};

struct RowPropagation
{
   bool infeasible = false;
   std::vector<BoundTightening> tightenings;
};

/// Whether moving a bound from `current` to `candidate` counts as a
/// tightening. Integral variables need any strict integral step, continuous
/// ones an absolute plus relative margin.
inline bool
is_bound_improvement( VarKind kind, BoundSide side, double current,
                      double candidate,
                      const PropagationSettings& settings = {} )
{
   if( std::isinf( candidate ) )
      return false;
   if( std::isinf( current ) )
      return true;
   const double step =
       side == BoundSide::kLower ? candidate - current : current - candidate;
   if( is_integral( kind ) )
      return step > 0.5;
   return step > settings.abs_improvement +
                     settings.rel_improvement * std::abs( current );
}

namespace detail
{

struct ActivityParts
{
   double min_finite = 0.0;
   int min_infinite = 0;
   double max_finite = 0.0;
   int max_infinite = 0;
};

inline double
min_contribution( double coef, double lower, double upper )
{
   return coef > 0 ? coef * lower : coef * upper;
}

inline double
max_contribution( double coef, double lower, double upper )
{
   return coef > 0 ? coef * upper : coef * lower;
}

inline ActivityParts
activity_parts( const Constraint& row, const DomainState& bounds )
{
   ActivityParts parts;
   for( const Term& t : row.terms )
   {
      const auto j = static_cast<std::size_t>( t.var );
      const double lo = min_contribution( t.coef, bounds.lower[j], bounds.upper[j] );
      const double hi = max_contribution( t.coef, bounds.lower[j], bounds.upper[j] );
      if( std::isinf( lo ) )
         ++parts.min_infinite;
      else
         parts.min_finite += lo;
      if( std::isinf( hi ) )
         ++parts.max_infinite;
      else
         parts.max_finite += hi;
   }
   return parts;
}

inline double
round_candidate( VarKind kind, BoundSide side, double value,
                 const PropagationSettings& settings )
{
   // adding zero turns -0 into +0
   if( !is_integral( kind ) )
      return value + 0.0;
   return ( side == BoundSide::kLower ? std::ceil( value - settings.feastol )
                                      : std::floor( value + settings.feastol ) ) +
          0.0;
}

} // namespace detail

inline ActivityRange
row_activity( const Constraint& row, const DomainState& bounds )
{
   const detail::ActivityParts parts = detail::activity_parts( row, bounds );
   return { parts.min_infinite > 0 ? -kInfinity : parts.min_finite,
            parts.max_infinite > 0 ? kInfinity : parts.max_finite };
}

/// Single-row bound derivation from residual activities. Candidates are
/// computed against `bounds` as given, without sequential updates inside
/// the row.
inline RowPropagation
propagate_row( const Problem& problem, const Constraint& row,
               const DomainState& bounds,
               const PropagationSettings& settings = {} )
{
   RowPropagation out;
   const detail::ActivityParts parts = detail::activity_parts( row, bounds );
   const bool has_rhs = std::isfinite( row.rhs );
   const bool has_lhs = std::isfinite( row.lhs );

   if( has_rhs && parts.min_infinite == 0 &&
       parts.min_finite > row.rhs + settings.feastol )
   {
      out.infeasible = true;
      return out;
   }
   if( has_lhs && parts.max_infinite == 0 &&
       parts.max_finite < row.lhs - settings.feastol )
   {
      out.infeasible = true;
      return out;
   }

   auto offer = [&]( int j, BoundSide side, double value ) {
      if( !std::isfinite( value ) || std::abs( value ) >= kInfinityThreshold )
         return true;
      const auto idx = static_cast<std::size_t>( j );
      const VarKind kind = problem.variable( j ).kind;
      double candidate = detail::round_candidate( kind, side, value, settings );
      const double lo = bounds.lower[idx];
      const double up = bounds.upper[idx];
      if( side == BoundSide::kUpper )
      {
         if( candidate < lo - settings.feastol )
            return false;
         if( candidate - lo <= settings.abs_improvement * std::max( 1.0, std::abs( lo ) ) )
            candidate = lo;
         if( is_bound_improvement( kind, side, up, candidate, settings ) )
            out.tightenings.push_back( { j, side, candidate } );
      }
      else
      {
         if( candidate > up + settings.feastol )
            return false;
         if( up - candidate <= settings.abs_improvement * std::max( 1.0, std::abs( up ) ) )
            candidate = up;
         if( is_bound_improvement( kind, side, lo, candidate, settings ) )
            out.tightenings.push_back( { j, side, candidate } );
      }
      return true;
   };

   for( const Term& t : row.terms )
   {
      const auto idx = static_cast<std::size_t>( t.var );
      const double lo = bounds.lower[idx];
      const double up = bounds.upper[idx];

      if( has_rhs )
      {
         const double own = detail::min_contribution( t.coef, lo, up );
         double residual = -kInfinity;
         if( parts.min_infinite == 0 )
            residual = parts.min_finite - own;
         else if( parts.min_infinite == 1 && std::isinf( own ) )
            residual = parts.min_finite;
         if( std::isfinite( residual ) )
         {
            const double value = ( row.rhs - residual ) / t.coef;
            const BoundSide side = t.coef > 0 ? BoundSide::kUpper : BoundSide::kLower;
            if( !offer( t.var, side, value ) )
            {
               out.infeasible = true;
               out.tightenings.clear();
               return out;
            }
         }
      }
      if( has_lhs )
      {
         const double own = detail::max_contribution( t.coef, lo, up );
         double residual = kInfinity;
         if( parts.max_infinite == 0 )
            residual = parts.max_finite - own;
         else if( parts.max_infinite == 1 && std::isinf( own ) )
            residual = parts.max_finite;
         if( std::isfinite( residual ) )
         {
            const double value = ( row.lhs - residual ) / t.coef;
            const BoundSide side = t.coef > 0 ? BoundSide::kLower : BoundSide::kUpper;
            if( !offer( t.var, side, value ) )
            {
               out.infeasible = true;
               out.tightenings.clear();
               return out;
            }
         }
      }
   }
   return out;
}

namespace detail
{

/// Worklist fixpoint over the marked rows. Rows are swept in ascending index
/// order; rows touched during a sweep are queued for the next one.
inline PropagationResult
propagate_marked( const Problem& problem, DomainState bounds,
                  std::vector<char> marked,
                  const PropagationSettings& settings )
{
   PropagationResult result;
   const int nrows = problem.num_rows();
   std::vector<int> sweep;
   sweep.reserve( static_cast<std::size_t>( nrows ) );

   bool pending = true;
   while( pending && result.rounds < settings.max_rounds )
   {
      ++result.rounds;
      sweep.clear();
      for( int i = 0; i < nrows; ++i )
         if( marked[static_cast<std::size_t>( i )] )
            sweep.push_back( i );

      std::fill( marked.begin(), marked.end(), 0 );
      pending = false;

      for( int i : sweep )
      {
         RowPropagation rp =
             propagate_row( problem, problem.constraint( i ), bounds, settings );
         if( rp.infeasible )
         {
            result.status = PropagationStatus::kInfeasible;
            return result;
         }
         for( const BoundTightening& t : rp.tightenings )
         {
            const auto j = static_cast<std::size_t>( t.var );
            const VarKind kind = problem.variable( t.var ).kind;
            double& lo = bounds.lower[j];
            double& up = bounds.upper[j];
            // an earlier row of this sweep may already have moved the bound
            const double current = t.side == BoundSide::kLower ? lo : up;
            if( !is_bound_improvement( kind, t.side, current, t.value, settings ) )
               continue;
            if( t.side == BoundSide::kLower )
            {
               if( t.value > up + settings.feastol )
               {
                  result.status = PropagationStatus::kInfeasible;
                  return result;
               }
               lo = std::min( t.value, up );
            }
            else
            {
               if( t.value < lo - settings.feastol )
               {
                  result.status = PropagationStatus::kInfeasible;
                  return result;
               }
               up = std::max( t.value, lo );
            }
            ++result.tightenings;
            for( const ColumnEntry& e : problem.column( t.var ) )
            {
               marked[static_cast<std::size_t>( e.row )] = 1;
               pending = true;
            }
         }
      }
   }
   if( result.rounds == 0 )
      result.rounds = 1;
   result.bounds = std::move( bounds );
   return result;
}

} // namespace detail

/// Applies the fixings and propagates the rows they touch to a fixpoint.
/// Without fixings every row is propagated. Callers that already hold a
/// fixpoint domain get the same result as a full sweep would give.
inline PropagationResult
propagate_to_fixpoint( const Problem& problem, DomainState bounds,
                       std::span<const VarFixing> fixings,
                       const PropagationSettings& settings = {} )
{
   const auto nrows = static_cast<std::size_t>( problem.num_rows() );
   std::vector<char> marked( nrows, fixings.empty() ? 1 : 0 );

   for( const VarFixing& f : fixings )
   {
      const auto j = static_cast<std::size_t>( f.var );
      double value = f.value;
      if( is_integral( problem.variable( f.var ).kind ) )
      {
         if( !detail::is_integer_value( value ) )
            return { PropagationStatus::kInfeasible, {}, 0, 0 };
         value = std::round( value );
      }
      if( value < bounds.lower[j] - settings.feastol ||
          value > bounds.upper[j] + settings.feastol )
         return { PropagationStatus::kInfeasible, {}, 0, 0 };
      if( bounds.lower[j] == value && bounds.upper[j] == value )
         continue;
      bounds.lower[j] = value;
      bounds.upper[j] = value;
      for( const ColumnEntry& e : problem.column( f.var ) )
         marked[static_cast<std::size_t>( e.row )] = 1;
   }

   return detail::propagate_marked( problem, std::move( bounds ),
                                    std::move( marked ), settings );
}

/// Propagates the rows of variables whose bounds the caller changed.
inline PropagationResult
propagate_changes( const Problem& problem, DomainState bounds,
                   std::span<const int> changed,
                   const PropagationSettings& settings = {} )
{
   std::vector<char> marked( static_cast<std::size_t>( problem.num_rows() ), 0 );
   for( int j : changed )
      for( const ColumnEntry& e : problem.column( j ) )
         marked[static_cast<std::size_t>( e.row )] = 1;
   return detail::propagate_marked( problem, std::move( bounds ),
                                    std::move( marked ), settings );
}

} // namespace cliqueprobe

#endif
