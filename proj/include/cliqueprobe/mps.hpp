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

#ifndef CLIQUEPROBE_MPS_HPP_
#define CLIQUEPROBE_MPS_HPP_

#include "cliqueprobe/model.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace cliqueprobe
{

class MpsParseError : public std::runtime_error
{
 public:
   MpsParseError( std::size_t line, const std::string& message )
       : std::runtime_error( "line " + std::to_string( line ) + ": " + message ),
         line_( line )
   {
   }

   std::size_t
   line() const
   {
      return line_;
   }

 private:
   std::size_t line_;
};

namespace detail
{

enum class MpsSection
{
   kNone,
   kName,
   kObjSense,
   kRows,
   kColumns,
   kRhs,
   kRanges,
   kBounds,
   kEnd
};

inline std::vector<std::string_view>
split_tokens( std::string_view line )
{
   std::vector<std::string_view> tokens;
   std::size_t pos = 0;
   while( pos < line.size() )
   {
      while( pos < line.size() && std::isspace( static_cast<unsigned char>( line[pos] ) ) )
         ++pos;
      std::size_t end = pos;
      while( end < line.size() && !std::isspace( static_cast<unsigned char>( line[end] ) ) )
         ++end;
      if( end > pos )
         tokens.push_back( line.substr( pos, end - pos ) );
      pos = end;
   }
   return tokens;
}

inline double
parse_number( std::string_view token, std::size_t line )
{
   std::string text( token );
   char* end = nullptr;
   const double value = std::strtod( text.c_str(), &end );
   if( end == text.c_str() || *end != '\0' || std::isnan( value ) )
      throw MpsParseError( line, "invalid number '" + text + "'" );
   return normalize_infinity( value );
}

struct MpsColumn
{
   Variable var;
   bool default_upper = false;
   std::map<int, double> entries;
};

struct MpsRow
{
   char type;
   std::string name;
   double rhs = 0.0;
   std::optional<double> range;
};

} // namespace detail

/// Reads free-format MPS. Warnings (summed duplicate entries, ignored data)
/// are appended to `warnings` when given.
inline Problem
parse_mps( std::string_view text, std::vector<std::string>* warnings = nullptr )
{
   using detail::MpsSection;

   auto warn = [&]( std::size_t line, const std::string& msg ) {
      if( warnings != nullptr )
         warnings->push_back( "line " + std::to_string( line ) + ": " + msg );
   };

   std::string name;
   ObjSense sense = ObjSense::kMinimize;
   std::string objective_row;
   std::vector<detail::MpsRow> rows;
   std::unordered_map<std::string, int> row_index;
   std::unordered_map<std::string, char> free_rows;
   std::vector<detail::MpsColumn> columns;
   std::unordered_map<std::string, int> column_index;
   bool in_integer_block = false;

   MpsSection section = MpsSection::kNone;
   std::size_t line_no = 0;
   std::size_t pos = 0;

   auto find_row = [&]( std::string_view row, std::size_t line ) -> int {
      const std::string key( row );
      if( key == objective_row )
         return -1;
      if( free_rows.count( key ) )
         return -2;
      auto it = row_index.find( key );
      if( it == row_index.end() )
         throw MpsParseError( line, "reference to undeclared row '" + key + "'" );
      return it->second;
   };

   auto find_column = [&]( std::string_view col, std::size_t line ) -> detail::MpsColumn& {
      auto it = column_index.find( std::string( col ) );
      if( it == column_index.end() )
         throw MpsParseError( line, "reference to undeclared column '" +
                                        std::string( col ) + "'" );
      return columns[static_cast<std::size_t>( it->second )];
   };

   while( pos <= text.size() && section != MpsSection::kEnd )
   {
      if( pos == text.size() )
         break;
      std::size_t eol = text.find( '\n', pos );
      if( eol == std::string_view::npos )
         eol = text.size();
      std::string_view line = text.substr( pos, eol - pos );
      pos = eol + 1;
      ++line_no;
      if( !line.empty() && line.back() == '\r' )
         line.remove_suffix( 1 );

      const auto tokens = detail::split_tokens( line );
      if( tokens.empty() || line.front() == '*' )
         continue;

      const bool header = !std::isspace( static_cast<unsigned char>( line.front() ) );
      if( header )
      {
         const std::string_view key = tokens[0];
         if( key == "NAME" )
         {
            section = MpsSection::kName;
            if( tokens.size() > 1 )
               name = std::string( tokens[1] );
         }
         else if( key == "OBJSENSE" )
         {
            section = MpsSection::kObjSense;
            if( tokens.size() > 1 )
            {
               const std::string_view v = tokens[1];
               if( v == "MAX" || v == "MAXIMIZE" )
                  sense = ObjSense::kMaximize;
               else if( v != "MIN" && v != "MINIMIZE" )
                  throw MpsParseError( line_no, "invalid OBJSENSE '" + std::string( v ) + "'" );
            }
         }
         else if( key == "ROWS" )
            section = MpsSection::kRows;
         else if( key == "COLUMNS" )
            section = MpsSection::kColumns;
         else if( key == "RHS" )
            section = MpsSection::kRhs;
         else if( key == "RANGES" )
            section = MpsSection::kRanges;
         else if( key == "BOUNDS" )
            section = MpsSection::kBounds;
         else if( key == "ENDATA" )
            section = MpsSection::kEnd;
         else if( section == MpsSection::kObjSense &&
                  ( key == "MAX" || key == "MAXIMIZE" || key == "MIN" || key == "MINIMIZE" ) )
         {
            if( key == "MAX" || key == "MAXIMIZE" )
               sense = ObjSense::kMaximize;
         }
         else
            throw MpsParseError( line_no, "unknown section '" + std::string( key ) + "'" );
         continue;
      }

      switch( section )
      {
      case MpsSection::kNone:
      case MpsSection::kName:
         throw MpsParseError( line_no, "data outside of a section" );
      case MpsSection::kEnd:
         break;
      case MpsSection::kObjSense:
      {
         const std::string_view v = tokens[0];
         if( v == "MAX" || v == "MAXIMIZE" )
            sense = ObjSense::kMaximize;
         else if( v == "MIN" || v == "MINIMIZE" )
            sense = ObjSense::kMinimize;
         else
            throw MpsParseError( line_no, "invalid OBJSENSE '" + std::string( v ) + "'" );
         break;
      }
      case MpsSection::kRows:
      {
         if( tokens.size() < 2 || tokens[0].size() != 1 )
            throw MpsParseError( line_no, "malformed ROWS entry" );
         const char type = static_cast<char>( std::toupper( tokens[0][0] ) );
         const std::string row_name( tokens[1] );
         if( row_index.count( row_name ) || row_name == objective_row ||
             free_rows.count( row_name ) )
            throw MpsParseError( line_no, "duplicate row '" + row_name + "'" );
         if( type == 'N' )
         {
            if( objective_row.empty() )
               objective_row = row_name;
            else
            {
               free_rows.emplace( row_name, type );
               warn( line_no, "additional free row '" + row_name + "' ignored" );
            }
         }
         else if( type == 'L' || type == 'G' || type == 'E' )
         {
            row_index.emplace( row_name, static_cast<int>( rows.size() ) );
            rows.push_back( { type, row_name, 0.0, std::nullopt } );
         }
         else
            throw MpsParseError( line_no, "unknown row type '" + std::string( tokens[0] ) + "'" );
         break;
      }
      case MpsSection::kColumns:
      {
         if( tokens.size() >= 3 && tokens[1] == "'MARKER'" )
         {
            if( tokens[2] == "'INTORG'" )
               in_integer_block = true;
            else if( tokens[2] == "'INTEND'" )
               in_integer_block = false;
            else
               throw MpsParseError( line_no, "unknown marker " + std::string( tokens[2] ) );
            break;
         }
         if( tokens.size() != 3 && tokens.size() != 5 )
            throw MpsParseError( line_no, "malformed COLUMNS entry" );
         const std::string col_name( tokens[0] );
         auto it = column_index.find( col_name );
         if( it == column_index.end() )
         {
            detail::MpsColumn col;
            col.var.name = col_name;
            if( in_integer_block )
            {
               col.var.kind = VarKind::kInteger;
               col.var.upper = 1.0;
               col.default_upper = true;
            }
            it = column_index.emplace( col_name, static_cast<int>( columns.size() ) ).first;
            columns.push_back( std::move( col ) );
         }
         detail::MpsColumn& col = columns[static_cast<std::size_t>( it->second )];
         for( std::size_t k = 1; k + 1 < tokens.size(); k += 2 )
         {
            const int row = find_row( tokens[k], line_no );
            const double value = detail::parse_number( tokens[k + 1], line_no );
            if( row == -1 )
               col.var.objective += value;
            else if( row >= 0 )
            {
               auto [entry, inserted] = col.entries.emplace( row, value );
               if( !inserted )
               {
                  entry->second += value;
                  warn( line_no, "duplicate entry for column '" + col_name + "' in row '" +
                                     std::string( tokens[k] ) + "' summed" );
               }
            }
         }
         break;
      }
      case MpsSection::kRhs:
      case MpsSection::kRanges:
      {
         // the set name is optional: odd token counts carry one
         std::size_t first = tokens.size() % 2 == 1 ? 1 : 0;
         if( tokens.size() < 2 || tokens.size() > 5 )
            throw MpsParseError( line_no, "malformed RHS/RANGES entry" );
         for( std::size_t k = first; k + 1 < tokens.size(); k += 2 )
         {
            const int row = find_row( tokens[k], line_no );
            const double value = detail::parse_number( tokens[k + 1], line_no );
            if( row == -2 )
               continue;
            if( row == -1 )
            {
               if( section == MpsSection::kRhs )
                  warn( line_no, "objective constant ignored" );
               continue;
            }
            if( section == MpsSection::kRhs )
               rows[static_cast<std::size_t>( row )].rhs = value;
            else
               rows[static_cast<std::size_t>( row )].range = value;
         }
         break;
      }
      case MpsSection::kBounds:
      {
         if( tokens.size() < 2 )
            throw MpsParseError( line_no, "malformed BOUNDS entry" );
         const std::string type( tokens[0] );
         const bool valueless = type == "FR" || type == "MI" || type == "PL" || type == "BV";
         std::string_view col_name;
         std::optional<double> value;
         if( valueless )
         {
            if( tokens.size() == 2 )
               col_name = tokens[1];
            else if( tokens.size() == 3 )
               col_name = tokens[2];
            else if( tokens.size() == 4 && type == "BV" )
               col_name = tokens[2];
            else
               throw MpsParseError( line_no, "malformed BOUNDS entry" );
         }
         else
         {
            if( tokens.size() == 3 )
            {
               col_name = tokens[1];
               value = detail::parse_number( tokens[2], line_no );
            }
            else if( tokens.size() == 4 )
            {
               col_name = tokens[2];
               value = detail::parse_number( tokens[3], line_no );
            }
            else
               throw MpsParseError( line_no, "malformed BOUNDS entry" );
         }
         detail::MpsColumn& col = find_column( col_name, line_no );
         Variable& v = col.var;
         if( type == "UP" || type == "UI" )
         {
            if( type == "UI" )
               v.kind = VarKind::kInteger;
            v.upper = *value;
            col.default_upper = false;
            if( *value < 0 && v.lower == 0.0 )
            {
               v.lower = -kInfinity;
               warn( line_no, "negative upper bound on '" + v.name + "' sets lower bound to -inf" );
            }
         }
         else if( type == "LO" || type == "LI" )
         {
            if( type == "LI" )
               v.kind = VarKind::kInteger;
            v.lower = *value;
            if( col.default_upper && *value > 1.0 )
            {
               v.upper = kInfinity;
               col.default_upper = false;
            }
         }
         else if( type == "FX" )
         {
            v.lower = v.upper = *value;
            col.default_upper = false;
         }
         else if( type == "FR" )
         {
            v.lower = -kInfinity;
            v.upper = kInfinity;
            col.default_upper = false;
         }
         else if( type == "MI" )
            v.lower = -kInfinity;
         else if( type == "PL" )
         {
            v.upper = kInfinity;
            col.default_upper = false;
         }
         else if( type == "BV" )
         {
            v.kind = VarKind::kInteger;
            v.lower = 0.0;
            v.upper = 1.0;
            col.default_upper = false;
         }
         else
            throw MpsParseError( line_no, "unknown bound type '" + type + "'" );
         break;
      }
      }
   }

   if( section != MpsSection::kEnd )
      throw MpsParseError( line_no, "missing ENDATA (last line " + std::to_string( line_no ) + ")" );

   std::vector<Constraint> constraints( rows.size() );
   for( std::size_t i = 0; i < rows.size(); ++i )
   {
      const detail::MpsRow& r = rows[i];
      Constraint& c = constraints[i];
      c.name = r.name;
      switch( r.type )
      {
      case 'L':
         c.rhs = r.rhs;
         if( r.range )
            c.lhs = r.rhs - std::abs( *r.range );
         break;
      case 'G':
         c.lhs = r.rhs;
         if( r.range )
            c.rhs = r.rhs + std::abs( *r.range );
         break;
      default:
         c.lhs = c.rhs = r.rhs;
         if( r.range && *r.range > 0 )
            c.rhs = r.rhs + *r.range;
         else if( r.range && *r.range < 0 )
            c.lhs = r.rhs + *r.range;
         break;
      }
   }

   std::vector<Variable> variables;
   variables.reserve( columns.size() );
   for( std::size_t j = 0; j < columns.size(); ++j )
   {
      detail::MpsColumn& col = columns[j];
      for( const auto& [row, coef] : col.entries )
         if( coef != 0.0 )
            constraints[static_cast<std::size_t>( row )].terms.push_back(
                { static_cast<int>( j ), coef } );
      Variable v = col.var;
      if( is_integral( v.kind ) )
      {
         if( std::isfinite( v.lower ) )
            v.lower = std::ceil( v.lower - kFeasTol );
         if( std::isfinite( v.upper ) )
            v.upper = std::floor( v.upper + kFeasTol );
         if( v.lower >= 0.0 && v.upper <= 1.0 )
            v.kind = VarKind::kBinary;
      }
      variables.push_back( std::move( v ) );
   }

   try
   {
      return build_problem( std::move( variables ), std::move( constraints ), sense,
                            std::move( name ) );
   }
   catch( const ModelError& e )
   {
      throw MpsParseError( line_no, e.what() );
   }
}

inline Problem
read_mps_file( const std::string& path, std::vector<std::string>* warnings = nullptr )
{
   std::ifstream in( path, std::ios::binary );
   if( !in )
      throw std::runtime_error( "cannot open '" + path + "'" );
   std::ostringstream buffer;
   buffer << in.rdbuf();
   return parse_mps( buffer.str(), warnings );
}

} // namespace cliqueprobe

#endif
