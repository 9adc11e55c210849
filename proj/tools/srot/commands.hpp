#pragma once

#include <functional>
#include <iosfwd>

#include <CLI11.hpp>

namespace srot::cli {

using Action = std::function<int()>;

// Each setup function declares its flags on `app` and returns the action to
// run once parsing succeeded.
Action setup_solve(CLI::App& app, std::ostream& out, std::ostream& err);
Action setup_bench(CLI::App& app, std::ostream& out, std::ostream& err);
Action setup_transfer(CLI::App& app, std::ostream& out, std::ostream& err);
Action setup_verify(CLI::App& app, std::ostream& out, std::ostream& err);
Action setup_report(CLI::App& app, std::ostream& out, std::ostream& err);

}  // namespace srot::cli
