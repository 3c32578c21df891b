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

#ifndef CLIQUEPROBE_MODEL_HPP_
#define CLIQUEPROBE_MODEL_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

namespace cliqueprobe
{

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Any magnitude at or beyond this value is treated as an infinite bound.
inline constexpr double kInfinityThreshold = 1e20;

inline constexpr double kFeasTol = 1e-6;

inline double
normalize_infinity( double value )
{
   if( value >= kInfinityThreshold )
      return kInfinity;
   if( value <= -kInfinityThreshold )
      return -kInfinity;
   return value + 0.0;
}

enum class VarKind
{
   kContinuous,
   kInteger,
   kBinary
};

inline bool
is_integral( VarKind kind )
{
   return kind != VarKind::kContinuous;
}

enum class ObjSense
{
   kMinimize,
   kMaximize
};

enum class BoundSide
{
   kLower,
   kUpper
};

struct Variable
{
   int index = -1;
   double lower = 0.0;
   double upper = kInfinity;
   VarKind kind = VarKind::kContinuous;
   double objective = 0.0;
   std::string name;
};

struct Term
{
   int var;
   double coef;

   bool
   operator==( const Term& ) const = default;
};

struct Constraint
{
   int index = -1;
   std::vector<Term> terms;
   double lhs = -kInfinity;
   double rhs = kInfinity;
   std::string name;
};

struct ColumnEntry
{
   int row;
   double coef;

   bool
   operator==( const ColumnEntry& ) const = default;
};

class ModelError : public std::runtime_error
{
 public:
   using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Transactions
// ---------------------------------------------------------------------------

struct Fixing
{
   int var;
   double value;

   bool
   operator==( const Fixing& ) const = default;
};

struct BoundChange
{
   int var;
   BoundSide side;
   double value;

   bool
   operator==( const BoundChange& ) const = default;
};

/// target = offset + slope * source, with source binary.
struct Substitution
{
   int target;
   double offset;
   double slope;
   int source;

   bool
   operator==( const Substitution& ) const = default;
};

/// The clique's origin row, normalized as scale * sum(x) <= scale, becomes
/// the equation scale * sum(x) = scale.
struct CliqueUpgrade
{
   int clique;
   int row;
   double scale;

   bool
   operator==( const CliqueUpgrade& ) const = default;
};

/// binary = assignment  =>  var >= value (lower) or var <= value (upper).
struct Implication
{
   int binary;
   int assignment;
   int var;
   BoundSide side;
   double value;

   bool
   operator==( const Implication& ) const = default;
};

struct GlobalInfeasible
{
   bool
   operator==( const GlobalInfeasible& ) const = default;
};

using Transaction = std::variant<Fixing, BoundChange, Substitution,
                                 CliqueUpgrade, Implication, GlobalInfeasible>;

inline std::string
describe( const Transaction& transaction )
{
   std::ostringstream out;
   out.precision( 17 );
   auto side = []( BoundSide s ) { return s == BoundSide::kLower ? "lower" : "upper"; };
   std::visit(
       [&]( const auto& t ) {
          using T = std::decay_t<decltype( t )>;
          if constexpr( std::is_same_v<T, Fixing> )
             out << "Fixing(" << t.var << ", " << t.value << ")";
          else if constexpr( std::is_same_v<T, BoundChange> )
             out << "BoundChange(" << t.var << ", " << side( t.side ) << ", "
                 << t.value << ")";
          else if constexpr( std::is_same_v<T, Substitution> )
             out << "Substitution(" << t.target << " = " << t.offset << " + "
                 << t.slope << " * " << t.source << ")";
          else if constexpr( std::is_same_v<T, CliqueUpgrade> )
             out << "CliqueUpgrade(" << t.clique << ", row " << t.row << ")";
          else if constexpr( std::is_same_v<T, Implication> )
             out << "Implication(" << t.binary << " = " << t.assignment
                 << " -> " << t.var << " " << side( t.side ) << " "
                 << t.value << ")";
          else
             out << "GlobalInfeasible";
       },
       transaction );
   return out.str();
}

/// Ordered record of reductions plus the counters reported per run.
class Ledger
{
 public:
   void
   record( Transaction transaction )
   {
      std::visit(
          [this]( const auto& t ) {
             using T = std::decay_t<decltype( t )>;
             if constexpr( std::is_same_v<T, Fixing> )
                ++fixings_;
             else if constexpr( std::is_same_v<T, BoundChange> )
                ++bound_changes_;
             else if constexpr( std::is_same_v<T, Substitution> )
                ++substitutions_;
             else if constexpr( std::is_same_v<T, CliqueUpgrade> )
                ++clique_upgrades_;
             else if constexpr( std::is_same_v<T, Implication> )
                ++implications_;
             else
                infeasible_ = true;
          },
          transaction );
      transactions_.push_back( std::move( transaction ) );
   }

   void
   add_propagations( std::size_t calls )
   {
      propagations_ += calls;
   }

   void
   append( const Ledger& other )
   {
      for( const Transaction& t : other.transactions_ )
         record( t );
      propagations_ += other.propagations_;
   }

   const std::vector<Transaction>&
   transactions() const
   {
      return transactions_;
   }

   std::size_t
   fixings() const
   {
      return fixings_;
   }

   std::size_t
   bound_changes() const
   {
      return bound_changes_;
   }

   std::size_t
   substitutions() const
   {
      return substitutions_;
   }

   std::size_t
   implications() const
   {
      return implications_;
   }

   std::size_t
   clique_upgrades() const
   {
      return clique_upgrades_;
   }

   std::size_t
   propagations() const
   {
      return propagations_;
   }

   bool
   infeasible() const
   {
      return infeasible_;
   }

   /// fixings + substitutions + bound changes
   std::size_t
   reductions() const
   {
      return fixings_ + substitutions_ + bound_changes_;
   }

   bool
   empty() const
   {
      return transactions_.empty();
   }

 private:
   std::vector<Transaction> transactions_;
   std::size_t fixings_ = 0;
   std::size_t bound_changes_ = 0;
   std::size_t substitutions_ = 0;
   std::size_t implications_ = 0;
   std::size_t clique_upgrades_ = 0;
   std::size_t propagations_ = 0;
   bool infeasible_ = false;
};

// ---------------------------------------------------------------------------
// Problem
// ---------------------------------------------------------------------------

class Problem;

Problem
build_problem( std::vector<Variable> variables,
               std::vector<Constraint> constraints,
               ObjSense sense = ObjSense::kMinimize, std::string name = {} );

struct ApplyResult;

ApplyResult
apply_transactions( const Problem& problem, const Ledger& ledger );

/// Immutable after construction; row and column views are kept transposed.
class Problem
{
 public:
   const std::string&
   name() const
   {
      return name_;
   }

   ObjSense
   sense() const
   {
      return sense_;
   }

   int
   num_vars() const
   {
      return static_cast<int>( variables_.size() );
   }

   int
   num_rows() const
   {
      return static_cast<int>( constraints_.size() );
   }

   const std::vector<Variable>&
   variables() const
   {
      return variables_;
   }

   const Variable&
   variable( int j ) const
   {
      return variables_[static_cast<std::size_t>( j )];
   }

   const std::vector<Constraint>&
   constraints() const
   {
      return constraints_;
   }

   const Constraint&
   constraint( int i ) const
   {
      return constraints_[static_cast<std::size_t>( i )];
   }

   std::span<const ColumnEntry>
   column( int j ) const
   {
      return columns_[static_cast<std::size_t>( j )];
   }

   /// Variables eliminated by an applied substitution keep their slot but
   /// appear in no row.
   bool
   is_removed( int j ) const
   {
      return removed_[static_cast<std::size_t>( j )] != 0;
   }

   double
   objective_offset() const
   {
      return objective_offset_;
   }

   std::vector<double>
   lower_bounds() const
   {
      std::vector<double> result;
      result.reserve( variables_.size() );
      for( const Variable& v : variables_ )
         result.push_back( v.lower );
      return result;
   }

   std::vector<double>
   upper_bounds() const
   {
      std::vector<double> result;
      result.reserve( variables_.size() );
      for( const Variable& v : variables_ )
         result.push_back( v.upper );
      return result;
   }

   /// Column index recomputed from the rows; equals column() for every
   /// consistent problem.
   std::vector<std::vector<ColumnEntry>>
   transpose_rows() const
   {
      std::vector<std::vector<ColumnEntry>> cols( variables_.size() );
      for( const Constraint& c : constraints_ )
         for( const Term& t : c.terms )
            cols[static_cast<std::size_t>( t.var )].push_back(
                { c.index, t.coef } );
      return cols;
   }

 private:
   friend Problem
   build_problem( std::vector<Variable>, std::vector<Constraint>, ObjSense,
                  std::string );
   friend ApplyResult
   apply_transactions( const Problem&, const Ledger& );

   void
   rebuild_columns()
   {
      columns_ = transpose_rows();
   }

   std::string name_;
   ObjSense sense_ = ObjSense::kMinimize;
   std::vector<Variable> variables_;
   std::vector<Constraint> constraints_;
   std::vector<std::vector<ColumnEntry>> columns_;
   std::vector<char> removed_;
   double objective_offset_ = 0.0;
};

namespace detail
{

inline bool
is_integer_value( double v )
{
   return std::isinf( v ) || std::abs( v - std::round( v ) ) <= kFeasTol;
}

} // namespace detail

inline Problem
build_problem( std::vector<Variable> variables,
               std::vector<Constraint> constraints, ObjSense sense,
               std::string name )
{
   Problem problem;
   problem.name_ = std::move( name );
   problem.sense_ = sense;

   const int nvars = static_cast<int>( variables.size() );
   for( int j = 0; j < nvars; ++j )
   {
      Variable& v = variables[static_cast<std::size_t>( j )];
      v.index = j;
      v.lower = normalize_infinity( v.lower );
      v.upper = normalize_infinity( v.upper );
      if( std::isnan( v.lower ) || std::isnan( v.upper ) ||
          !std::isfinite( v.objective ) )
         throw ModelError( "variable " + v.name + ": non-finite data" );
      if( v.lower > v.upper )
         throw ModelError( "variable " + v.name + ": lower bound " +
                           std::to_string( v.lower ) + " exceeds upper bound " +
                           std::to_string( v.upper ) );
      if( is_integral( v.kind ) )
      {
         if( !detail::is_integer_value( v.lower ) ||
             !detail::is_integer_value( v.upper ) )
            throw ModelError( "variable " + v.name +
                              ": integral variable with fractional bounds" );
         if( std::isfinite( v.lower ) )
            v.lower = std::round( v.lower );
         if( std::isfinite( v.upper ) )
            v.upper = std::round( v.upper );
      }
      if( v.kind == VarKind::kBinary &&
          ( ( v.lower != 0.0 && v.lower != 1.0 ) ||
            ( v.upper != 0.0 && v.upper != 1.0 ) ) )
         throw ModelError( "variable " + v.name +
                           ": binary variable with bounds outside {0, 1}" );
   }

   const int nrows = static_cast<int>( constraints.size() );
   for( int i = 0; i < nrows; ++i )
   {
      Constraint& c = constraints[static_cast<std::size_t>( i )];
      c.index = i;
      c.lhs = normalize_infinity( c.lhs );
      c.rhs = normalize_infinity( c.rhs );
      if( std::isnan( c.lhs ) || std::isnan( c.rhs ) )
         throw ModelError( "constraint " + c.name + ": NaN side" );
      if( c.lhs > c.rhs )
         throw ModelError( "constraint " + c.name + ": lhs exceeds rhs" );
      if( std::isinf( c.lhs ) && std::isinf( c.rhs ) )
         throw ModelError( "constraint " + c.name + ": both sides infinite" );
      for( const Term& t : c.terms )
      {
         if( t.var < 0 || t.var >= nvars )
            throw ModelError( "constraint " + c.name +
                              ": variable index out of range" );
         if( !std::isfinite( t.coef ) )
            throw ModelError( "constraint " + c.name +
                              ": non-finite coefficient" );
         if( t.coef == 0.0 )
            throw ModelError( "constraint " + c.name + ": zero coefficient" );
      }
      std::sort( c.terms.begin(), c.terms.end(),
                 []( const Term& a, const Term& b ) { return a.var < b.var; } );
      for( std::size_t k = 1; k < c.terms.size(); ++k )
         if( c.terms[k].var == c.terms[k - 1].var )
            throw ModelError( "constraint " + c.name +
                              ": duplicate variable index " +
                              std::to_string( c.terms[k].var ) );
   }

   problem.variables_ = std::move( variables );
   problem.constraints_ = std::move( constraints );
   problem.removed_.assign( problem.variables_.size(), 0 );
   problem.rebuild_columns();
   return problem;
}

// ---------------------------------------------------------------------------
// Applying a ledger
// ---------------------------------------------------------------------------

struct ApplyResult
{
   bool infeasible = false;
   /// empty iff infeasible
   std::optional<Problem> problem;
   std::size_t applied = 0;
   std::size_t discarded = 0;
   /// implications are reported, never applied
   std::size_t ignored = 0;
   std::vector<int> upgraded_cliques;
};

/// Validity-checks each transaction against the partially reduced problem and
/// applies it, in ledger order. Stale transactions are skipped.
inline ApplyResult
apply_transactions( const Problem& problem, const Ledger& ledger )
{
   ApplyResult result;
   Problem reduced = problem;

   auto integral_value = [&]( int j, double v ) {
      return is_integral( reduced.variable( j ).kind ) ? std::round( v ) : v;
   };

   for( const Transaction& transaction : ledger.transactions() )
   {
      if( std::holds_alternative<GlobalInfeasible>( transaction ) )
      {
         result.infeasible = true;
         result.problem.reset();
         return result;
      }

      bool applied = false;

      if( const auto* fix = std::get_if<Fixing>( &transaction ) )
      {
         Variable& v = reduced.variables_[static_cast<std::size_t>( fix->var )];
         const bool integral_ok =
             !is_integral( v.kind ) || detail::is_integer_value( fix->value );
         const double value = integral_value( fix->var, fix->value );
         if( !reduced.is_removed( fix->var ) && integral_ok &&
             value >= v.lower - kFeasTol && value <= v.upper + kFeasTol &&
             !( v.lower == value && v.upper == value ) )
         {
            v.lower = value;
            v.upper = value;
            applied = true;
         }
      }
      else if( const auto* chg = std::get_if<BoundChange>( &transaction ) )
      {
         Variable& v = reduced.variables_[static_cast<std::size_t>( chg->var )];
         double value = chg->value;
         if( is_integral( v.kind ) )
            value = chg->side == BoundSide::kLower
                        ? std::ceil( value - kFeasTol )
                        : std::floor( value + kFeasTol );
         if( !reduced.is_removed( chg->var ) )
         {
            if( chg->side == BoundSide::kLower && value > v.lower &&
                value <= v.upper + kFeasTol )
            {
               v.lower = std::min( value, v.upper );
               applied = true;
            }
            else if( chg->side == BoundSide::kUpper && value < v.upper &&
                     value >= v.lower - kFeasTol )
            {
               v.upper = std::max( value, v.lower );
               applied = true;
            }
         }
      }
      else if( const auto* sub = std::get_if<Substitution>( &transaction ) )
      {
         const Variable& z = reduced.variable( sub->target );
         const Variable& x = reduced.variable( sub->source );
         const double a = sub->offset;
         const double ab = sub->offset + sub->slope;
         const auto within = [&]( double value ) {
            return value >= z.lower - kFeasTol && value <= z.upper + kFeasTol;
         };
         if( sub->target != sub->source && !reduced.is_removed( sub->target ) &&
             !reduced.is_removed( sub->source ) &&
             x.kind == VarKind::kBinary && sub->slope != 0.0 && within( a ) &&
             within( ab ) )
         {
            for( const ColumnEntry& entry : reduced.column( sub->target ) )
            {
               Constraint& row =
                   reduced.constraints_[static_cast<std::size_t>( entry.row )];
               const double shift = entry.coef * a;
               if( std::isfinite( row.lhs ) )
                  row.lhs -= shift;
               if( std::isfinite( row.rhs ) )
                  row.rhs -= shift;

               std::vector<Term> terms;
               terms.reserve( row.terms.size() );
               bool merged = false;
               const double added = entry.coef * sub->slope;
               for( const Term& t : row.terms )
               {
                  if( t.var == sub->target )
                     continue;
                  if( t.var == sub->source )
                  {
                     merged = true;
                     const double coef = t.coef + added;
                     if( std::abs( coef ) > 1e-12 * std::max( 1.0, std::abs( t.coef ) ) )
                        terms.push_back( { t.var, coef } );
                     continue;
                  }
                  terms.push_back( t );
               }
               if( !merged )
               {
                  terms.push_back( { sub->source, added } );
                  std::sort( terms.begin(), terms.end(),
                             []( const Term& l, const Term& r ) {
                                return l.var < r.var;
                             } );
               }
               row.terms = std::move( terms );
            }

            Variable& zv =
                reduced.variables_[static_cast<std::size_t>( sub->target )];
            Variable& xv =
                reduced.variables_[static_cast<std::size_t>( sub->source )];
            reduced.objective_offset_ += zv.objective * a;
            xv.objective += zv.objective * sub->slope;
            zv.objective = 0.0;
            reduced.removed_[static_cast<std::size_t>( sub->target )] = 1;
            reduced.rebuild_columns();
            applied = true;
         }
      }
      else if( const auto* up = std::get_if<CliqueUpgrade>( &transaction ) )
      {
         if( up->row >= 0 && up->row < reduced.num_rows() )
         {
            Constraint& row =
                reduced.constraints_[static_cast<std::size_t>( up->row )];
            // the row must still read scale * sum(binaries); a substitution
            // may have rewritten it since
            bool clique_form = row.terms.size() >= 2 && up->scale != 0.0;
            for( const Term& t : row.terms )
               if( reduced.is_removed( t.var ) ||
                   reduced.variable( t.var ).kind != VarKind::kBinary ||
                   std::abs( t.coef - up->scale ) > 1e-9 * std::abs( up->scale ) )
                  clique_form = false;
            if( clique_form )
            {
               const double a = std::abs( up->scale );
               const double lo = ( up->scale > 0 ? row.lhs : -row.rhs ) / a;
               const double hi = ( up->scale > 0 ? row.rhs : -row.lhs ) / a;
               clique_form = hi >= 1.0 - 1e-9 && hi < 2.0 - 1e-9 &&
                             ( !std::isfinite( lo ) || lo <= 1e-9 ||
                               std::abs( lo - 1.0 ) <= 1e-9 );
            }
            if( clique_form && ( row.lhs != up->scale || row.rhs != up->scale ) )
            {
               row.lhs = up->scale;
               row.rhs = up->scale;
               result.upgraded_cliques.push_back( up->clique );
               applied = true;
            }
         }
      }
      else
      {
         ++result.ignored;
         continue;
      }

      if( applied )
         ++result.applied;
      else
         ++result.discarded;
   }

   result.problem = std::move( reduced );
   return result;
}

} // namespace cliqueprobe

#endif
