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

#include "cliqueprobe.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

using namespace cliqueprobe;

namespace
{

int
run( int argc, char** argv )
{
   CLI::App app{ "Standard and clique probing on MPS instances" };

   std::string input;
   std::string mode = "both";
   std::string report_path;
   PipelineConfig config;
   std::size_t delta = 1;
   bool no_abort = false;
   std::size_t max_probed = 0;
   std::size_t work_budget = 0;

   app.add_option( "input", input, "MPS instance" )->required();
   app.add_option( "--mode", mode, "default, clique or both" )
       ->check( CLI::IsMember( { "default", "clique", "both" } ) )
       ->capture_default_str();
   app.add_option( "--max-clique-size", config.clique.selection.max_clique_size )
       ->capture_default_str();
   app.add_option( "--max-clique-vars", config.clique.selection.max_total_vars )
       ->capture_default_str();
   app.add_option( "--batch-size", config.clique.initial_batch_size )
       ->check( CLI::PositiveNumber )
       ->capture_default_str();
   app.add_option( "--min-reds-per-prop", config.clique.min_reductions_per_propagation )
       ->capture_default_str();
   app.add_option( "--overlap", config.clique.selection.overlap_ratio )
       ->check( CLI::Range( 0.0, 1.0 ) )
       ->capture_default_str();
   app.add_option( "--delta", delta, "abort when at most this many reductions remain" )
       ->capture_default_str();
   app.add_flag( "--no-abort", no_abort, "probe every assignment of a clique" );
   app.add_option( "--unsuccessful-streak", config.clique.unsuccessful_streak )
       ->capture_default_str();
   app.add_option( "--stall-window", config.limits.stall_window )->capture_default_str();
   app.add_option( "--min-successes", config.limits.min_successes )->capture_default_str();
   app.add_option( "--max-probed", max_probed, "probe at most this many binaries" );
   app.add_option( "--work-budget", work_budget, "propagation calls, 10 * rows if unset" );
   app.add_option( "--seed", config.seed, "tie-breaking seed, 0 keeps index order" )
       ->capture_default_str();
   app.add_option( "--report", report_path, "append reports to this file instead of stdout" );

   try
   {
      app.parse( argc, argv );
   }
   catch( const CLI::ParseError& e )
   {
      const int code = app.exit( e );
      return code == 0 ? 0 : 1;
   }

   config.clique.abort_threshold = no_abort ? std::nullopt : std::optional<std::size_t>( delta );
   if( app.count( "--max-probed" ) )
      config.limits.max_variables = max_probed;
   if( app.count( "--work-budget" ) )
      config.limits.work_budget = work_budget;

   Problem problem;
   std::string digest;
   try
   {
      std::ifstream in( input, std::ios::binary );
      if( !in )
         throw std::runtime_error( "cannot open file" );
      std::ostringstream bytes;
      bytes << in.rdbuf();
      digest = input_digest( bytes.str() );
      std::vector<std::string> warnings;
      problem = parse_mps( bytes.str(), &warnings );
      for( const std::string& w : warnings )
         std::cerr << input << ": warning: " << w << '\n';
   }
   catch( const std::exception& e )
   {
      std::cerr << input << ": " << e.what() << '\n';
      return 1;
   }

   std::vector<Mode> modes;
   if( mode != "clique" )
      modes.push_back( Mode::kDefault );
   if( mode != "default" )
      modes.push_back( Mode::kClique );

   std::ofstream file;
   if( !report_path.empty() )
   {
      file.open( report_path, std::ios::app );
      if( !file )
      {
         std::cerr << report_path << ": cannot open for writing\n";
         return 1;
      }
   }
   std::ostream& out = report_path.empty() ? std::cout : file;

   bool infeasible = false;
   for( Mode m : modes )
   {
      PipelineRun result = run_pipeline( problem, m, config );
      result.report.input_digest = digest;
      out << write_report( result.report ) << '\n';
      infeasible = infeasible || result.report.infeasible;
   }
   out.flush();
   return infeasible ? 2 : 0;
}

} // namespace

int
main( int argc, char** argv )
{
   return run( argc, argv );
}
