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

#ifndef CLIQUEPROBE_REPORT_HPP_
#define CLIQUEPROBE_REPORT_HPP_

#include "json.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cliqueprobe
{

struct CliqueReportEntry
{
   std::size_t size = 0;
   std::size_t assignments_probed = 0;
   bool aborted = false;
   bool upgraded = false;

   bool
   operator==( const CliqueReportEntry& ) const = default;
};

struct RunReport
{
   std::string instance;
   std::string mode;
   /// FNV-1a of the input file bytes
   std::string input_digest;
   double elapsed_seconds = 0.0;
   std::size_t fixings = 0;
   std::size_t substitutions = 0;
   std::size_t bound_changes = 0;
   std::size_t implications = 0;
   std::size_t clique_upgrades = 0;
   std::size_t propagations = 0;
   double propagations_per_second = 0.0;
   double reductions_per_propagation = 0.0;
   std::vector<CliqueReportEntry> cliques;
   bool infeasible = false;

   std::size_t
   reductions() const
   {
      return fixings + substitutions + bound_changes;
   }

   bool
   operator==( const RunReport& ) const = default;
};

class ReportError : public std::runtime_error
{
 public:
   using std::runtime_error::runtime_error;
};

inline std::string
input_digest( std::string_view bytes )
{
   std::uint64_t hash = 14695981039346656037ULL;
   for( unsigned char c : bytes )
   {
      hash ^= c;
      hash *= 1099511628211ULL;
   }
   char buffer[17];
   std::snprintf( buffer, sizeof( buffer ), "%016llx",
                  static_cast<unsigned long long>( hash ) );
   return buffer;
}

/// Rounds to six significant digits.
inline double
round_significant( double value )
{
   char buffer[32];
   std::snprintf( buffer, sizeof( buffer ), "%.6g", value );
   return std::strtod( buffer, nullptr );
}

inline double
reductions_per_propagation( const RunReport& report )
{
   return static_cast<double>( report.reductions() ) /
          static_cast<double>( std::max<std::size_t>( report.propagations, 1 ) );
}

/// One JSON object on a single line, keys in a fixed order.
inline std::string
write_report( const RunReport& report )
{
   nlohmann::ordered_json doc;
   doc["instance"] = report.instance;
   doc["mode"] = report.mode;
   doc["input_digest"] = report.input_digest;
   doc["elapsed_seconds"] = round_significant( report.elapsed_seconds );
   doc["fixings"] = report.fixings;
   doc["substitutions"] = report.substitutions;
   doc["bound_changes"] = report.bound_changes;
   doc["implications"] = report.implications;
   doc["clique_upgrades"] = report.clique_upgrades;
   doc["propagations"] = report.propagations;
   doc["propagations_per_second"] = round_significant( report.propagations_per_second );
   doc["reductions_per_propagation"] = round_significant( reductions_per_propagation( report ) );
   nlohmann::ordered_json cliques = nlohmann::ordered_json::array();
   for( const CliqueReportEntry& c : report.cliques )
   {
      nlohmann::ordered_json entry;
      entry["size"] = c.size;
      entry["assignments_probed"] = c.assignments_probed;
      entry["aborted"] = c.aborted;
      entry["upgraded"] = c.upgraded;
      cliques.push_back( std::move( entry ) );
   }
   doc["cliques"] = std::move( cliques );
   doc["infeasible"] = report.infeasible;
   return doc.dump();
}

inline RunReport
parse_report( std::string_view text )
{
   RunReport report;
   try
   {
      const nlohmann::json doc = nlohmann::json::parse( text );
      report.instance = doc.at( "instance" ).get<std::string>();
      report.mode = doc.at( "mode" ).get<std::string>();
      report.input_digest = doc.at( "input_digest" ).get<std::string>();
      report.elapsed_seconds = doc.at( "elapsed_seconds" ).get<double>();
      report.fixings = doc.at( "fixings" ).get<std::size_t>();
      report.substitutions = doc.at( "substitutions" ).get<std::size_t>();
      report.bound_changes = doc.at( "bound_changes" ).get<std::size_t>();
      report.implications = doc.at( "implications" ).get<std::size_t>();
      report.clique_upgrades = doc.at( "clique_upgrades" ).get<std::size_t>();
      report.propagations = doc.at( "propagations" ).get<std::size_t>();
      report.propagations_per_second = doc.at( "propagations_per_second" ).get<double>();
      report.reductions_per_propagation = doc.at( "reductions_per_propagation" ).get<double>();
      for( const auto& entry : doc.at( "cliques" ) )
         report.cliques.push_back( { entry.at( "size" ).get<std::size_t>(),
                                     entry.at( "assignments_probed" ).get<std::size_t>(),
                                     entry.at( "aborted" ).get<bool>(),
                                     entry.at( "upgraded" ).get<bool>() } );
      report.infeasible = doc.at( "infeasible" ).get<bool>();
   }
   catch( const nlohmann::json::exception& e )
   {
      throw ReportError( std::string( "malformed report: " ) + e.what() );
   }
   return report;
}

} // namespace cliqueprobe

#endif
