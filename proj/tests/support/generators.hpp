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

#ifndef CLIQUEPROBE_TESTS_GENERATORS_HPP_
#define CLIQUEPROBE_TESTS_GENERATORS_HPP_

#include "cliqueprobe/model.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <string>
#include <vector>

namespace testing
{

using namespace cliqueprobe;

struct GeneratorParams
{
   int min_clique = 3;
   int max_clique = 8;
   int max_binaries = 10;
   int max_general = 5;
   int max_rows = 20;
   /// cap on the product of general-integer domain sizes
   int max_general_points = 81;
   /// chance that a general variable is tied to the clique by an equation
   double link_probability = 0.7;
   /// random side rows on top of the clique and its links
   int max_side_rows = 4;
};

struct Generated
{
   Problem problem;
   std::vector<int> planted;
   bool exactly_one = false;
   std::vector<double> witness;
};

inline int
uniform( std::mt19937_64& rng, int lo, int hi )
{
   return std::uniform_int_distribution<int>( lo, hi )( rng );
}

inline bool
coin( std::mt19937_64& rng, double p )
{
   return std::bernoulli_distribution( p )( rng );
}

inline int
nonzero( std::mt19937_64& rng, int magnitude )
{
   const int v = uniform( rng, 1, magnitude );
   return coin( rng, 0.5 ) ? v : -v;
}

/// Random instance with a planted clique row over 3-8 binaries, a few
/// bounded integers linked to the clique, and rows built around a random
/// witness point so the instance is feasible. All data are integral.
inline Generated
random_clique_instance( std::mt19937_64& rng, const GeneratorParams& params = {} )
{
   Generated g;
   const int s = uniform( rng, params.min_clique, params.max_clique );
   const int nb = uniform( rng, s, std::max( s, params.max_binaries ) );
   const int ng = uniform( rng, 1, params.max_general );
   const int n = nb + ng;

   std::vector<Variable> vars;
   for( int j = 0; j < nb; ++j )
   {
      Variable v;
      v.kind = VarKind::kBinary;
      v.upper = 1.0;
      v.name = "b" + std::to_string( j );
      v.objective = uniform( rng, -3, 3 );
      vars.push_back( v );
   }
   // 0 = free, 1 = linked by an inequality, 2 = linked by an equation
   std::vector<int> link( static_cast<std::size_t>( ng ), 0 );
   for( int& l : link )
      if( coin( rng, params.link_probability ) )
         l = coin( rng, 0.6 ) ? 2 : 1;

   int points = 1;
   for( int j = 0; j < ng; ++j )
   {
      Variable v;
      v.kind = VarKind::kInteger;
      int width = 0;
      if( link[static_cast<std::size_t>( j )] == 2 )
         // determined by the binaries, so no extra points to enumerate
         width = uniform( rng, 6, 16 );
      else
      {
         width = uniform( rng, 1, 6 );
         while( width > 1 && points * ( width + 1 ) > params.max_general_points )
            --width;
         if( points * ( width + 1 ) > params.max_general_points )
            width = 0;
         points *= width + 1;
      }
      v.lower = uniform( rng, -2, 2 );
      v.upper = v.lower + width;
      v.name = "g" + std::to_string( j );
      v.objective = uniform( rng, -3, 3 );
      vars.push_back( v );
   }

   std::vector<int> binaries( static_cast<std::size_t>( nb ) );
   std::iota( binaries.begin(), binaries.end(), 0 );
   std::shuffle( binaries.begin(), binaries.end(), rng );
   g.planted.assign( binaries.begin(), binaries.begin() + s );
   std::sort( g.planted.begin(), g.planted.end() );
   g.exactly_one = coin( rng, 0.5 );

   std::vector<double> p( static_cast<std::size_t>( n ), 0.0 );
   for( int j = 0; j < nb; ++j )
      p[static_cast<std::size_t>( j )] = coin( rng, 0.4 ) ? 1.0 : 0.0;
   for( int member : g.planted )
      p[static_cast<std::size_t>( member )] = 0.0;
   if( g.exactly_one || coin( rng, 0.8 ) )
      p[static_cast<std::size_t>( g.planted[static_cast<std::size_t>( uniform( rng, 0, s - 1 ) )] )] =
          1.0;
   for( int j = nb; j < n; ++j )
   {
      Variable& v = vars[static_cast<std::size_t>( j )];
      p[static_cast<std::size_t>( j )] =
          uniform( rng, static_cast<int>( v.lower ), static_cast<int>( v.upper ) );
      if( link[static_cast<std::size_t>( j - nb )] == 2 )
      {
         // keep the witness away from the domain edges
         v.lower = p[static_cast<std::size_t>( j )] - uniform( rng, 2, 8 );
         v.upper = p[static_cast<std::size_t>( j )] + uniform( rng, 2, 8 );
      }
   }

   std::vector<Constraint> rows;
   auto activity = [&]( const std::vector<Term>& terms ) {
      double a = 0.0;
      for( const Term& t : terms )
         a += t.coef * p[static_cast<std::size_t>( t.var )];
      return a;
   };
   auto add_row = [&]( std::vector<Term> terms, double eq_probability ) {
      const double act = activity( terms );
      Constraint c;
      c.terms = std::move( terms );
      if( eq_probability >= 1.0 || ( eq_probability > 0.0 && coin( rng, eq_probability ) ) )
         c.lhs = c.rhs = act;
      else if( coin( rng, 0.5 ) )
      {
         c.lhs = -kInfinity;
         c.rhs = act + uniform( rng, 0, 3 );
      }
      else
      {
         c.lhs = act - uniform( rng, 0, 3 );
         c.rhs = kInfinity;
      }
      c.name = "r" + std::to_string( rows.size() );
      rows.push_back( std::move( c ) );
   };

   {
      const int a = coin( rng, 0.6 ) ? 1 : uniform( rng, 2, 3 );
      Constraint c;
      for( int member : g.planted )
         c.terms.push_back( { member, static_cast<double>( a ) } );
      if( g.exactly_one )
         c.lhs = c.rhs = a;
      else
      {
         c.lhs = -kInfinity;
         c.rhs = a + uniform( rng, 0, a - 1 );
      }
      c.name = "clique";
      rows.push_back( std::move( c ) );
   }

   // general variables tied to the planted members
   for( int j = nb; j < n && static_cast<int>( rows.size() ) < params.max_rows; ++j )
   {
      const int kind = link[static_cast<std::size_t>( j - nb )];
      if( kind == 0 )
         continue;
      std::vector<Term> terms{ { j, 1.0 } };
      for( int member : g.planted )
         if( coin( rng, 0.8 ) )
            terms.push_back( { member, static_cast<double>( nonzero( rng, 3 ) ) } );
      if( terms.size() < 2 )
         terms.push_back( { g.planted.front(), static_cast<double>( nonzero( rng, 3 ) ) } );
      add_row( std::move( terms ), kind == 2 ? 1.0 : 0.0 );
   }

   const int extra = uniform( rng, 0, std::max( 0, std::min( params.max_side_rows, params.max_rows -
                                                                    static_cast<int>( rows.size() ) ) ) );
   std::vector<int> all( static_cast<std::size_t>( n ) );
   std::iota( all.begin(), all.end(), 0 );
   for( int r = 0; r < extra && static_cast<int>( rows.size() ) < params.max_rows; ++r )
   {
      std::shuffle( all.begin(), all.end(), rng );
      const int k = uniform( rng, 2, std::min( 5, n ) );
      std::vector<Term> terms;
      for( int t = 0; t < k; ++t )
         terms.push_back( { all[static_cast<std::size_t>( t )],
                            static_cast<double>( nonzero( rng, 4 ) ) } );
      add_row( std::move( terms ), 0.15 );
   }

   g.witness = p;
   g.problem = build_problem( std::move( vars ), std::move( rows ), ObjSense::kMinimize,
                              "random" );
   return g;
}

struct BenchmarkParams
{
   int min_cliques = 2;
   int max_cliques = 5;
   int min_clique = 3;
   int max_clique = 8;
   int max_extra_binaries = 10;
   int max_rows_noise = 8;
   /// let side rows touch clique members directly
   bool noise_on_members = true;
};

/// Larger instance for comparing the two modes: several planted cliques,
/// each with general integers tied to its members, plus noise rows. It is
/// feasible by construction and not meant for enumeration.
inline Generated
random_benchmark_instance( std::mt19937_64& rng, const BenchmarkParams& params = {} )
{
   Generated g;
   const int nc = uniform( rng, params.min_cliques, params.max_cliques );
   std::vector<int> sizes;
   int nb = 0;
   for( int c = 0; c < nc; ++c )
   {
      sizes.push_back( uniform( rng, params.min_clique, params.max_clique ) );
      nb += sizes.back();
   }
   nb += uniform( rng, 0, params.max_extra_binaries );

   std::vector<Variable> vars;
   for( int j = 0; j < nb; ++j )
   {
      Variable v;
      v.kind = VarKind::kBinary;
      v.upper = 1.0;
      v.name = "b" + std::to_string( j );
      v.objective = uniform( rng, -3, 3 );
      vars.push_back( v );
   }
   std::vector<double> p( static_cast<std::size_t>( nb ), 0.0 );
   for( int j = 0; j < nb; ++j )
      p[static_cast<std::size_t>( j )] = coin( rng, 0.4 ) ? 1.0 : 0.0;

   std::vector<Constraint> rows;
   std::vector<std::vector<int>> cliques;
   std::vector<int> order( static_cast<std::size_t>( nb ) );
   std::iota( order.begin(), order.end(), 0 );
   std::shuffle( order.begin(), order.end(), rng );
   std::size_t next = 0;
   for( int c = 0; c < nc; ++c )
   {
      std::vector<int> members( order.begin() + static_cast<long>( next ),
                                order.begin() + static_cast<long>( next ) + sizes[static_cast<std::size_t>( c )] );
      next += static_cast<std::size_t>( sizes[static_cast<std::size_t>( c )] );
      std::sort( members.begin(), members.end() );
      const bool exactly_one = coin( rng, 0.5 );
      for( int m : members )
         p[static_cast<std::size_t>( m )] = 0.0;
      if( exactly_one || coin( rng, 0.8 ) )
         p[static_cast<std::size_t>( members[static_cast<std::size_t>(
             uniform( rng, 0, static_cast<int>( members.size() ) - 1 ) )] )] = 1.0;
      Constraint row;
      for( int m : members )
         row.terms.push_back( { m, 1.0 } );
      row.lhs = exactly_one ? 1.0 : -kInfinity;
      row.rhs = 1.0;
      row.name = "clique" + std::to_string( c );
      rows.push_back( std::move( row ) );
      cliques.push_back( std::move( members ) );
      if( c == 0 )
      {
         g.planted = cliques.back();
         g.exactly_one = exactly_one;
      }
   }

   auto activity = [&]( const std::vector<Term>& terms ) {
      double a = 0.0;
      for( const Term& t : terms )
         a += t.coef * p[static_cast<std::size_t>( t.var )];
      return a;
   };

   // general integers tied to one clique each
   for( int c = 0; c < nc; ++c )
   {
      const int links = uniform( rng, 1, 3 );
      for( int l = 0; l < links; ++l )
      {
         const int j = static_cast<int>( vars.size() );
         std::vector<Term> terms{ { j, 1.0 } };
         for( int m : cliques[static_cast<std::size_t>( c )] )
            if( coin( rng, 0.8 ) )
               terms.push_back( { m, static_cast<double>( nonzero( rng, 4 ) ) } );
         if( terms.size() < 2 )
            terms.push_back( { cliques[static_cast<std::size_t>( c )].front(), 1.0 } );

         Variable v;
         v.kind = VarKind::kInteger;
         const double value = uniform( rng, -4, 6 );
         v.lower = value - uniform( rng, 2, 8 );
         v.upper = value + uniform( rng, 2, 8 );
         v.name = "g" + std::to_string( j );
         v.objective = uniform( rng, -3, 3 );
         vars.push_back( v );
         p.push_back( value );

         Constraint row;
         const double act = activity( terms );
         row.terms = std::move( terms );
         if( coin( rng, 0.6 ) )
            row.lhs = row.rhs = act;
         else if( coin( rng, 0.5 ) )
         {
            row.lhs = -kInfinity;
            row.rhs = act + uniform( rng, 0, 2 );
         }
         else
         {
            row.lhs = act - uniform( rng, 0, 2 );
            row.rhs = kInfinity;
         }
         row.name = "link" + std::to_string( rows.size() );
         rows.push_back( std::move( row ) );
      }
   }

   const int n = static_cast<int>( vars.size() );
   std::vector<char> in_clique( static_cast<std::size_t>( n ), 0 );
   for( const auto& members : cliques )
      for( int m : members )
         in_clique[static_cast<std::size_t>( m )] = 1;
   std::vector<int> all;
   for( int j = 0; j < n; ++j )
      if( params.noise_on_members || !in_clique[static_cast<std::size_t>( j )] )
         all.push_back( j );
   const int noise = all.size() >= 2 ? uniform( rng, 1, params.max_rows_noise ) : 0;
   for( int r = 0; r < noise; ++r )
   {
      std::shuffle( all.begin(), all.end(), rng );
      const int k = uniform( rng, 2, std::min( 6, static_cast<int>( all.size() ) ) );
      std::vector<Term> terms;
      for( int t = 0; t < k; ++t )
         terms.push_back( { all[static_cast<std::size_t>( t )],
                            static_cast<double>( nonzero( rng, 4 ) ) } );
      Constraint row;
      const double act = activity( terms );
      row.terms = std::move( terms );
      if( coin( rng, 0.5 ) )
      {
         row.lhs = -kInfinity;
         row.rhs = act + uniform( rng, 0, 3 );
      }
      else
      {
         row.lhs = act - uniform( rng, 0, 3 );
         row.rhs = kInfinity;
      }
      row.name = "noise" + std::to_string( rows.size() );
      rows.push_back( std::move( row ) );
   }

   g.witness = p;
   g.problem = build_problem( std::move( vars ), std::move( rows ), ObjSense::kMinimize,
                              "bench" );
   return g;
}

} // namespace testing

#endif
