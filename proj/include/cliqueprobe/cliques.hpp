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

#ifndef CLIQUEPROBE_CLIQUES_HPP_
#define CLIQUEPROBE_CLIQUES_HPP_

#include "cliqueprobe/model.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <numeric>
#include <span>
#include <unordered_set>
#include <vector>

namespace cliqueprobe
{

enum class CliqueKind
{
   kAtMostOne,
   kExactlyOne
};

/// Binary variables of which at most (or exactly) one takes the value one.
/// The origin row reads scale * sum(members) <= scale (or = scale) after
/// normalization.
struct Clique
{
   std::vector<int> members;
   CliqueKind kind = CliqueKind::kAtMostOne;
   int origin = -1;
   double scale = 1.0;

   std::size_t
   size() const
   {
      return members.size();
   }

   bool
   contains( int var ) const
   {
      return std::find( members.begin(), members.end(), var ) != members.end();
   }

   bool
   operator==( const Clique& ) const = default;
};

struct CliqueScore
{
   int clique;
   double score;
};

struct CliqueSelection
{
   double overlap_ratio = 0.5;
   std::size_t max_clique_size = 150;
   std::size_t max_total_vars = 3000;
};

/// Reads cliques off rows whose variables are all binary and whose
/// coefficients share one value a; rhs/a in [1, 2) gives an at-most-one
/// clique, an equation with rhs/a = 1 an exactly-one clique. Rows with the
/// same member set are reported once, keeping the stronger kind.
inline std::vector<Clique>
detect_cliques( const Problem& problem, double tol = 1e-9 )
{
   std::vector<Clique> cliques;
   std::map<std::vector<int>, std::size_t> seen;

   for( const Constraint& row : problem.constraints() )
   {
      if( row.terms.size() < 2 )
         continue;

      const double common = row.terms.front().coef;
      bool usable = true;
      for( const Term& t : row.terms )
      {
         if( problem.variable( t.var ).kind != VarKind::kBinary ||
             std::abs( t.coef - common ) > tol * std::abs( common ) )
         {
            usable = false;
            break;
         }
      }
      if( !usable )
         continue;

      // scale to a * sum(x) in [lo, hi] with a > 0
      const double a = std::abs( common );
      const double lo = common > 0 ? row.lhs : -row.rhs;
      const double hi = common > 0 ? row.rhs : -row.lhs;
      if( !std::isfinite( hi ) )
         continue;

      const double upper_ratio = hi / a;
      const double lower_ratio = lo / a;

      Clique clique;
      if( std::isfinite( lo ) && std::abs( lower_ratio - 1.0 ) <= tol &&
          std::abs( upper_ratio - 1.0 ) <= tol )
         clique.kind = CliqueKind::kExactlyOne;
      else if( upper_ratio >= 1.0 - tol && upper_ratio < 2.0 - tol &&
               ( !std::isfinite( lo ) || lower_ratio <= tol ) )
         clique.kind = CliqueKind::kAtMostOne;
      else
         continue;

      clique.origin = row.index;
      clique.scale = common;
      clique.members.reserve( row.terms.size() );
      for( const Term& t : row.terms )
         clique.members.push_back( t.var );

      auto [it, inserted] = seen.emplace( clique.members, cliques.size() );
      if( inserted )
         cliques.push_back( std::move( clique ) );
      else if( clique.kind == CliqueKind::kExactlyOne &&
               cliques[it->second].kind == CliqueKind::kAtMostOne )
         cliques[it->second] = std::move( clique );
   }
   return cliques;
}

/// Average member score, descending; ties keep the smaller origin row first.
inline std::vector<CliqueScore>
score_cliques( std::span<const Clique> cliques, std::span<const double> scores )
{
   std::vector<CliqueScore> result;
   result.reserve( cliques.size() );
   for( std::size_t c = 0; c < cliques.size(); ++c )
   {
      double sum = 0.0;
      for( int var : cliques[c].members )
         sum += scores[static_cast<std::size_t>( var )];
      const double mean =
          cliques[c].members.empty()
              ? 0.0
              : sum / static_cast<double>( cliques[c].members.size() );
      result.push_back( { static_cast<int>( c ), mean } );
   }
   std::stable_sort( result.begin(), result.end(),
                     [&]( const CliqueScore& l, const CliqueScore& r ) {
                        if( l.score != r.score )
                           return l.score > r.score;
                        return cliques[static_cast<std::size_t>( l.clique )].origin <
                               cliques[static_cast<std::size_t>( r.clique )].origin;
                     } );
   return result;
}

/// Scans cliques in score order and returns the indices to probe.
inline std::vector<int>
select_cliques( std::span<const Clique> cliques,
                std::span<const CliqueScore> sorted,
                const CliqueSelection& limits = {} )
{
   std::vector<int> selected;
   std::unordered_set<int> covered;
   std::size_t total = 0;

   for( const CliqueScore& entry : sorted )
   {
      const Clique& clique = cliques[static_cast<std::size_t>( entry.clique )];
      const std::size_t n = clique.size();
      if( n > limits.max_clique_size || n == 0 )
         continue;

      std::size_t overlap = 0;
      for( int var : clique.members )
         overlap += covered.count( var );
      if( static_cast<double>( overlap ) / static_cast<double>( n ) >
          limits.overlap_ratio )
         continue;

      if( total + n > limits.max_total_vars )
         break;

      total += n;
      selected.push_back( entry.clique );
      covered.insert( clique.members.begin(), clique.members.end() );
   }
   return selected;
}

} // namespace cliqueprobe

#endif
