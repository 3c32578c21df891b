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

#ifndef CLIQUEPROBE_TESTS_ORACLE_HPP_
#define CLIQUEPROBE_TESTS_ORACLE_HPP_

#include "cliqueprobe/clique_probing.hpp"
#include "cliqueprobe/cliques.hpp"
#include "cliqueprobe/model.hpp"
#include "cliqueprobe/propagate.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace testing
{

using namespace cliqueprobe;

using Point = std::vector<double>;

/// Every integral point within `lower`/`upper` satisfying all rows.
/// Depth-first in variable order; a row prunes a branch once its fixed part
/// plus the extreme contributions of the free part leaves its range.
inline std::vector<Point>
enumerate_points( const Problem& problem, const std::vector<double>& lower,
                  const std::vector<double>& upper, std::size_t limit = 5'000'000 )
{
   const int n = problem.num_vars();
   const int m = problem.num_rows();
   for( int j = 0; j < n; ++j )
   {
      if( !is_integral( problem.variable( j ).kind ) || !std::isfinite( lower[j] ) ||
          !std::isfinite( upper[j] ) )
         throw std::invalid_argument( "enumerate_points: bounded integral variables only" );
   }

   std::vector<std::vector<std::pair<int, double>>> incidence( static_cast<std::size_t>( n ) );
   std::vector<double> fixed( static_cast<std::size_t>( m ), 0.0 );
   std::vector<double> free_min( static_cast<std::size_t>( m ), 0.0 );
   std::vector<double> free_max( static_cast<std::size_t>( m ), 0.0 );
   for( int i = 0; i < m; ++i )
      for( const Term& t : problem.constraint( i ).terms )
      {
         incidence[static_cast<std::size_t>( t.var )].push_back( { i, t.coef } );
         const double a = t.coef * lower[static_cast<std::size_t>( t.var )];
         const double b = t.coef * upper[static_cast<std::size_t>( t.var )];
         free_min[static_cast<std::size_t>( i )] += std::min( a, b );
         free_max[static_cast<std::size_t>( i )] += std::max( a, b );
      }

   auto row_ok = [&]( int i ) {
      const Constraint& c = problem.constraint( i );
      const auto r = static_cast<std::size_t>( i );
      return fixed[r] + free_min[r] <= c.rhs + 1e-9 && fixed[r] + free_max[r] >= c.lhs - 1e-9;
   };

   for( int i = 0; i < m; ++i )
      if( !row_ok( i ) )
         return {};

   std::vector<Point> points;
   Point current( static_cast<std::size_t>( n ), 0.0 );

   auto dfs = [&]( auto&& self, int j ) -> void {
      if( points.size() >= limit )
         throw std::runtime_error( "enumerate_points: too many points" );
      if( j == n )
      {
         points.push_back( current );
         return;
      }
      const auto idx = static_cast<std::size_t>( j );
      for( auto& [i, coef] : incidence[idx] )
      {
         const auto r = static_cast<std::size_t>( i );
         free_min[r] -= std::min( coef * lower[idx], coef * upper[idx] );
         free_max[r] -= std::max( coef * lower[idx], coef * upper[idx] );
      }
      for( double v = lower[idx]; v <= upper[idx]; v += 1.0 )
      {
         current[idx] = v;
         bool ok = true;
         for( auto& [i, coef] : incidence[idx] )
            fixed[static_cast<std::size_t>( i )] += coef * v;
         for( auto& [i, coef] : incidence[idx] )
            ok = ok && row_ok( i );
         if( ok )
            self( self, j + 1 );
         for( auto& [i, coef] : incidence[idx] )
            fixed[static_cast<std::size_t>( i )] -= coef * v;
      }
      for( auto& [i, coef] : incidence[idx] )
      {
         const auto r = static_cast<std::size_t>( i );
         free_min[r] += std::min( coef * lower[idx], coef * upper[idx] );
         free_max[r] += std::max( coef * lower[idx], coef * upper[idx] );
      }
   };
   dfs( dfs, 0 );
   return points;
}

inline std::vector<Point>
enumerate_points( const Problem& problem )
{
   return enumerate_points( problem, problem.lower_bounds(), problem.upper_bounds() );
}

/// Describes the first point violating `t`, or nothing when `t` holds on
/// all of `points`.
inline std::optional<std::string>
violation( const Problem& problem, const Transaction& t, const std::vector<Point>& points )
{
   constexpr double eps = 1e-9;
   auto fail = [&]( const Point& p ) {
      std::ostringstream out;
      out << describe( t ) << " violated at (";
      for( std::size_t j = 0; j < p.size(); ++j )
         out << ( j ? "," : "" ) << p[j];
      out << ")";
      return std::optional<std::string>( out.str() );
   };

   if( std::holds_alternative<GlobalInfeasible>( t ) )
   {
      if( !points.empty() )
         return fail( points.front() );
      return std::nullopt;
   }
   for( const Point& p : points )
   {
      if( const auto* f = std::get_if<Fixing>( &t ) )
      {
         if( std::abs( p[static_cast<std::size_t>( f->var )] - f->value ) > eps )
            return fail( p );
      }
      else if( const auto* b = std::get_if<BoundChange>( &t ) )
      {
         const double v = p[static_cast<std::size_t>( b->var )];
         if( b->side == BoundSide::kLower ? v < b->value - eps : v > b->value + eps )
            return fail( p );
      }
      else if( const auto* s = std::get_if<Substitution>( &t ) )
      {
         const double z = p[static_cast<std::size_t>( s->target )];
         const double x = p[static_cast<std::size_t>( s->source )];
         if( std::abs( z - ( s->offset + s->slope * x ) ) > eps )
            return fail( p );
      }
      else if( const auto* u = std::get_if<CliqueUpgrade>( &t ) )
      {
         double activity = 0.0;
         for( const Term& term : problem.constraint( u->row ).terms )
            activity += term.coef * p[static_cast<std::size_t>( term.var )];
         if( std::abs( activity - u->scale ) > eps )
            return fail( p );
      }
      else if( const auto* imp = std::get_if<Implication>( &t ) )
      {
         if( p[static_cast<std::size_t>( imp->binary )] != imp->assignment )
            continue;
         const double v = p[static_cast<std::size_t>( imp->var )];
         if( imp->side == BoundSide::kLower ? v < imp->value - eps : v > imp->value + eps )
            return fail( p );
      }
   }
   return std::nullopt;
}

/// Per-assignment propagated domains of a clique, stored in full.
struct AssignmentDomains
{
   std::vector<int> index;
   std::vector<DomainState> domains;
   std::vector<int> infeasible;
};

inline AssignmentDomains
propagate_assignments( const Problem& problem, const DomainState& bounds,
                       const Clique& clique, const PropagationSettings& settings = {} )
{
   AssignmentDomains out;
   const std::size_t n = clique.members.size();
   const int first = clique.kind == CliqueKind::kAtMostOne ? 0 : 1;
   for( int k = first; k <= static_cast<int>( n ); ++k )
   {
      std::vector<VarFixing> fixings;
      for( std::size_t i = 0; i < n; ++i )
         fixings.push_back( { clique.members[i], static_cast<int>( i ) + 1 == k ? 1.0 : 0.0 } );
      PropagationResult r = propagate_to_fixpoint( problem, bounds, fixings, settings );
      if( r.consistent() )
      {
         out.index.push_back( k );
         out.domains.push_back( std::move( r.bounds ) );
      }
      else
         out.infeasible.push_back( k );
   }
   return out;
}

/// Trackers computed directly from all stored domains: exact min/max and
/// order statistics over the multiset of fixed values.
inline TrackerPair
oracle_trackers( const AssignmentDomains& stored, std::size_t nvars )
{
   TrackerPair t;
   t.processed = stored.index;
   t.bounds.min_lower.assign( nvars, kInfinity );
   t.bounds.max_upper.assign( nvars, -kInfinity );
   t.subs.lowest.assign( nvars, kInfinity );
   t.subs.second_lowest.assign( nvars, kInfinity );
   t.subs.argmin.assign( nvars, -1 );
   t.subs.highest.assign( nvars, -kInfinity );
   t.subs.second_highest.assign( nvars, -kInfinity );
   t.subs.argmax.assign( nvars, -1 );
   t.subs.fixed_in_all.assign( nvars, 1 );

   for( std::size_t j = 0; j < nvars; ++j )
   {
      std::vector<std::pair<double, int>> values;
      for( std::size_t a = 0; a < stored.domains.size(); ++a )
      {
         const DomainState& d = stored.domains[a];
         t.bounds.min_lower[j] = std::min( t.bounds.min_lower[j], d.lower[j] );
         t.bounds.max_upper[j] = std::max( t.bounds.max_upper[j], d.upper[j] );
         if( d.lower[j] == d.upper[j] )
            values.push_back( { d.lower[j], stored.index[a] } );
         else
            t.subs.fixed_in_all[j] = 0;
      }
      if( values.empty() )
         continue;

      std::vector<std::pair<double, int>> asc = values;
      std::stable_sort( asc.begin(), asc.end(),
                        []( const auto& a, const auto& b ) { return a.first < b.first; } );
      t.subs.lowest[j] = asc[0].first;
      t.subs.argmin[j] = asc[0].second;
      if( asc.size() > 1 )
         t.subs.second_lowest[j] = asc[1].first;

      std::vector<std::pair<double, int>> desc = values;
      std::stable_sort( desc.begin(), desc.end(),
                        []( const auto& a, const auto& b ) { return a.first > b.first; } );
      t.subs.highest[j] = desc[0].first;
      t.subs.argmax[j] = desc[0].second;
      if( desc.size() > 1 )
         t.subs.second_highest[j] = desc[1].first;
   }
   return t;
}

inline bool
same_problem( const Problem& a, const Problem& b )
{
   if( a.num_vars() != b.num_vars() || a.num_rows() != b.num_rows() || a.sense() != b.sense() ||
       a.name() != b.name() )
      return false;
   for( int j = 0; j < a.num_vars(); ++j )
   {
      const Variable& u = a.variable( j );
      const Variable& v = b.variable( j );
      if( u.lower != v.lower || u.upper != v.upper || u.kind != v.kind ||
          u.objective != v.objective || u.name != v.name )
         return false;
   }
   for( int i = 0; i < a.num_rows(); ++i )
   {
      const Constraint& c = a.constraint( i );
      const Constraint& d = b.constraint( i );
      if( c.lhs != d.lhs || c.rhs != d.rhs || c.terms.size() != d.terms.size() ||
          c.name != d.name )
         return false;
      for( std::size_t k = 0; k < c.terms.size(); ++k )
         if( c.terms[k].var != d.terms[k].var || c.terms[k].coef != d.terms[k].coef )
            return false;
   }
   return true;
}

} // namespace testing

#endif
