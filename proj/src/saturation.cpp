#include <exception>

#include <omp.h>

#include "cf/analysis.hpp"
#include "cf/error.hpp"
#include "cf/saturation.hpp"
#include "cf/syntax.hpp"

namespace cf {

namespace {

bool is_data_value(const Term& t) {
  if (t.is_pair()) return is_data_value(t.left()) && is_data_value(t.right());
  return is_data_term(t);
}

}  // namespace

void check_saturation_preconditions(const Program& p, const std::string& f,
                                    const std::vector<Term>& args) {
  ConsFreeResult cf = is_cons_free(p);
  if (!cf.cons_free) {
    throw PreconditionError("program is not cons-free (rule " +
                            std::to_string(*cf.rule + 1) + ": " +
                            print_term(*cf.witness) + ")");
  }
  if (!p.symbols().is_defined(f)) {
    throw PreconditionError("'" + f + "' is not a defined symbol");
  }
  const Type& type = p.symbols().defined_type(f);
  auto params = type.argument_types();
  if (args.size() > params.size()) {
    throw PreconditionError("'" + f + "' applied to too many arguments");
  }
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (!is_data_value(args[i])) {
      throw PreconditionError("argument " + std::to_string(i + 1) +
                              " is not a data value: " + print_term(args[i]));
    }
    if (args[i].type() != params[i]) {
      throw PreconditionError("argument " + std::to_string(i + 1) +
                              " has type " + args[i].type().to_string() +
                              ", expected " + params[i].to_string());
    }
  }
  Type result = type.drop_arguments(args.size());
  if (type_order(result) != 0) {
    throw PreconditionError("the call '" + f + "' with " +
                            std::to_string(args.size()) +
                            " arguments has a result of non-zero order: " +
                            result.to_string());
  }
}

SaturationResult saturate(const Program& p, const std::string& f,
                          const std::vector<Term>& args,
                          const SaturationOptions& options) {
  switch (options.mode) {
    case SaturationMode::Eager:
      return saturate_eager(p, f, args, options);
    case SaturationMode::DemandDriven:
      return saturate_demand_driven(p, f, args, options);
    case SaturationMode::Auto:
      break;
  }
  check_saturation_preconditions(p, f, args);
  SaturationOptions small = options;
  small.statement_cap = std::min(options.statement_cap, options.eager_threshold);
  try {
    return saturate_eager(p, f, args, small);
  } catch (const ResourceError&) {
  } catch (const PreconditionError&) {
  }
  return saturate_demand_driven(p, f, args, options);
}

std::vector<SaturationResult> saturate_batch_serial(
    const Program& p, const std::string& f,
    const std::vector<std::vector<Term>>& queries,
    const SaturationOptions& options) {
  std::vector<SaturationResult> out;
  out.reserve(queries.size());
  for (const auto& q : queries) out.push_back(saturate(p, f, q, options));
  return out;
}

std::vector<SaturationResult> saturate_batch(
    const Program& p, const std::string& f,
    const std::vector<std::vector<Term>>& queries,
    const SaturationOptions& options) {
  std::vector<SaturationResult> out(queries.size());
  std::vector<std::exception_ptr> errors(queries.size());
  const auto n = static_cast<std::int64_t>(queries.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t i = 0; i < n; ++i) {
    try {
      out[i] = saturate(p, f, queries[i], options);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

}  // namespace cf
