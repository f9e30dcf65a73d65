#include "config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>

#include "qtrack/errors.hpp"
#include "qtrack/pr_design.hpp"

namespace qtrack::cli {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& message) { throw Error("config: " + message); }

/// Every key must appear in `required` or `optional`; every required key must
/// be present.  Keeps configs honest about typos.
void check_keys(const json& obj, const std::string& section,
                std::initializer_list<const char*> required,
                std::initializer_list<const char*> optional) {
  const auto known = [&](const std::string& key) {
    return std::any_of(required.begin(), required.end(),
                       [&](const char* k) { return key == k; }) ||
           std::any_of(optional.begin(), optional.end(),
                       [&](const char* k) { return key == k; });
  };
  for (const auto& item : obj.items()) {
    if (!known(item.key()))
      fail("unknown key '" + item.key() + "' in section '" + section + "'");
  }
  for (const char* key : required) {
    if (!obj.contains(key))
      fail("section '" + section + "' is missing required key '" + key + "'");
  }
}

const json& get_section(const json& doc, const std::string& name) {
  if (!doc.contains(name)) fail("missing required section '" + name + "'");
  const json& section = doc.at(name);
  if (!section.is_object()) fail("section '" + name + "' must be an object");
  if (section.empty()) fail("section '" + name + "' is empty");
  return section;
}

double get_number(const json& obj, const std::string& section, const char* key) {
  const json& v = obj.at(key);
  if (!v.is_number()) fail("'" + section + "." + key + "' must be a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) fail("'" + section + "." + key + "' must be finite");
  return d;
}

double get_number_or(const json& obj, const std::string& section, const char* key,
                     double fallback) {
  return obj.contains(key) ? get_number(obj, section, key) : fallback;
}

double get_positive(const json& obj, const std::string& section, const char* key) {
  const double d = get_number(obj, section, key);
  if (!(d > 0.0)) fail("'" + section + "." + key + "' must be positive");
  return d;
}

int get_int(const json& obj, const std::string& section, const char* key) {
  const json& v = obj.at(key);
  if (!v.is_number_integer()) fail("'" + section + "." + key + "' must be an integer");
  return v.get<int>();
}

std::vector<double> get_coeff_array(const json& obj, const std::string& path,
                                    const char* key) {
  const json& v = obj.at(key);
  if (!v.is_array() || v.empty())
    fail("'" + path + "." + key + "' must be a non-empty array of numbers");
  std::vector<double> out;
  out.reserve(v.size());
  for (const json& c : v) {
    if (!c.is_number()) fail("'" + path + "." + key + "' must contain only numbers");
    const double d = c.get<double>();
    if (!std::isfinite(d)) fail("'" + path + "." + key + "' must be finite");
    out.push_back(d);
  }
  return out;
}

ControllerCoeffs parse_controller_axis(const json& obj, const std::string& path) {
  if (!obj.is_object()) fail("'" + path + "' must be an object");
  check_keys(obj, path, {"num", "den"}, {});
  ControllerCoeffs c;
  c.num = get_coeff_array(obj, path, "num");
  c.den = get_coeff_array(obj, path, "den");
  if (std::all_of(c.den.begin(), c.den.end(), [](double d) { return d == 0.0; }))
    fail("'" + path + ".den' must not be the zero polynomial");
  return c;
}

}  // namespace

ExperimentConfig parse_config(const json& doc) {
  if (!doc.is_object()) fail("top level must be a JSON object");
  check_keys(doc, "top level", {"plant", "quantizer", "loop", "trajectory"},
             {"design", "controller", "step_change"});

  ExperimentConfig config;

  {
    const json& plant = get_section(doc, "plant");
    check_keys(plant, "plant", {"a", "b"}, {});
    config.plant_a = get_number(plant, "plant", "a");
    config.plant_b = get_number(plant, "plant", "b");
    if (!(config.plant_a >= 0.0)) fail("'plant.a' must be nonnegative");
    if (!(config.plant_b > 0.0)) fail("'plant.b' must be positive");
  }

  {
    const json& quantizer = get_section(doc, "quantizer");
    check_keys(quantizer, "quantizer", {"delta"}, {});
    config.delta = get_positive(quantizer, "quantizer", "delta");
  }

  {
    const json& loop = get_section(doc, "loop");
    check_keys(loop, "loop", {"dt", "t_end", "record_stride"},
               {"axes", "quantize_reference", "divergence_factor"});
    config.dt = get_positive(loop, "loop", "dt");
    config.t_end = get_positive(loop, "loop", "t_end");
    config.record_stride = get_int(loop, "loop", "record_stride");
    if (config.record_stride < 1) fail("'loop.record_stride' must be >= 1");
    if (loop.contains("axes")) {
      const json& axes = loop.at("axes");
      if (!axes.is_string()) fail("'loop.axes' must be \"x\", \"y\" or \"both\"");
      const std::string s = axes.get<std::string>();
      if (s == "x")
        config.axes = AxisSelection::XOnly;
      else if (s == "y")
        config.axes = AxisSelection::YOnly;
      else if (s == "both")
        config.axes = AxisSelection::Both;
      else
        fail("'loop.axes' must be \"x\", \"y\" or \"both\", got \"" + s + "\"");
    }
    if (loop.contains("quantize_reference")) {
      const json& q = loop.at("quantize_reference");
      if (!q.is_boolean()) fail("'loop.quantize_reference' must be a boolean");
      config.quantize_reference = q.get<bool>();
    }
    config.divergence_factor =
        get_number_or(loop, "loop", "divergence_factor", config.divergence_factor);
    if (!(config.divergence_factor > 0.0))
      fail("'loop.divergence_factor' must be positive");
  }

  const bool has_design = doc.contains("design");
  const bool has_controller = doc.contains("controller");
  if (has_design == has_controller)
    fail("exactly one of section 'design' or section 'controller' is required");

  if (has_design) {
    const json& design = get_section(doc, "design");
    check_keys(design, "design", {"k0", "resonant_k", "first_order_k"},
               {"causality_pole_factor"});
    DesignParams d;
    d.k0 = get_number(design, "design", "k0");
    d.resonant_k = get_number(design, "design", "resonant_k");
    d.first_order_k = get_number(design, "design", "first_order_k");
    d.causality_pole_factor = get_number_or(design, "design", "causality_pole_factor",
                                            d.causality_pole_factor);
    if (!(d.causality_pole_factor > 0.0))
      fail("'design.causality_pole_factor' must be positive");
    config.design = d;
  } else {
    const json& controller = get_section(doc, "controller");
    check_keys(controller, "controller", {}, {"x", "y"});
    if (controller.contains("x"))
      config.controller_x = parse_controller_axis(controller.at("x"), "controller.x");
    if (controller.contains("y"))
      config.controller_y = parse_controller_axis(controller.at("y"), "controller.y");
    const bool need_x = config.axes != AxisSelection::YOnly;
    const bool need_y = config.axes != AxisSelection::XOnly;
    if (need_x && !config.controller_x)
      fail("section 'controller' is missing required key 'x'");
    if (need_y && !config.controller_y)
      fail("section 'controller' is missing required key 'y'");
  }

  {
    const json& trajectory = get_section(doc, "trajectory");
    check_keys(trajectory, "trajectory", {"ax", "ay", "N", "f"}, {"x0", "y0"});
    config.trajectory.x0 = get_number_or(trajectory, "trajectory", "x0", 0.0);
    config.trajectory.y0 = get_number_or(trajectory, "trajectory", "y0", 0.0);
    config.trajectory.ax = get_positive(trajectory, "trajectory", "ax");
    config.trajectory.ay = get_positive(trajectory, "trajectory", "ay");
    config.trajectory.N = get_int(trajectory, "trajectory", "N");
    config.trajectory.f = get_positive(trajectory, "trajectory", "f");
    try {
      config.trajectory.validate();
    } catch (const Error& e) {
      fail(std::string("section 'trajectory': ") + e.what());
    }
  }

  if (doc.contains("step_change")) {
    const json& step = get_section(doc, "step_change");
    check_keys(step, "step_change", {"t_step", "new_center_x", "new_center_y"}, {});
    StepSpec s;
    s.t_step = get_number(step, "step_change", "t_step");
    s.new_center_x = get_number(step, "step_change", "new_center_x");
    s.new_center_y = get_number(step, "step_change", "new_center_y");
    if (!(s.t_step >= 0.0)) fail("'step_change.t_step' must be nonnegative");
    config.step = s;
  }

  return config;
}

ExperimentConfig load_config_file(const std::filesystem::path& path) {
  std::ifstream stream(path);
  if (!stream) fail("cannot open '" + path.string() + "'");
  json doc;
  try {
    doc = json::parse(stream);
  } catch (const json::parse_error& e) {
    fail("'" + path.string() + "' is not valid JSON: " + e.what());
  }
  return parse_config(doc);
}

json normalized_json(const ExperimentConfig& config) {
  json doc;
  doc["plant"] = {{"a", config.plant_a}, {"b", config.plant_b}};
  doc["quantizer"] = {{"delta", config.delta}};
  const char* axes = config.axes == AxisSelection::Both
                         ? "both"
                         : (config.axes == AxisSelection::XOnly ? "x" : "y");
  doc["loop"] = {{"dt", config.dt},
                 {"t_end", config.t_end},
                 {"record_stride", config.record_stride},
                 {"axes", axes},
                 {"quantize_reference", config.quantize_reference},
                 {"divergence_factor", config.divergence_factor}};
  if (config.design) {
    doc["design"] = {{"k0", config.design->k0},
                     {"resonant_k", config.design->resonant_k},
                     {"first_order_k", config.design->first_order_k},
                     {"causality_pole_factor", config.design->causality_pole_factor}};
  } else {
    json controller = json::object();
    if (config.controller_x)
      controller["x"] = {{"num", config.controller_x->num},
                         {"den", config.controller_x->den}};
    if (config.controller_y)
      controller["y"] = {{"num", config.controller_y->num},
                         {"den", config.controller_y->den}};
    doc["controller"] = controller;
  }
  doc["trajectory"] = {{"x0", config.trajectory.x0}, {"y0", config.trajectory.y0},
                       {"ax", config.trajectory.ax}, {"ay", config.trajectory.ay},
                       {"N", config.trajectory.N},   {"f", config.trajectory.f}};
  if (config.step) {
    doc["step_change"] = {{"t_step", config.step->t_step},
                          {"new_center_x", config.step->new_center_x},
                          {"new_center_y", config.step->new_center_y}};
  }
  return doc;
}

namespace {

TransferFunction plant_tf(const ExperimentConfig& config) {
  // b / (s (s + a))
  return TransferFunction(Polynomial{config.plant_b},
                          Polynomial{0.0, config.plant_a, 1.0});
}

TransferFunction controller_for_axis(const ExperimentConfig& config,
                                     const TransferFunction& plant, double omega,
                                     const std::optional<ControllerCoeffs>& explicit_c) {
  if (config.design) {
    PRComposition target;
    target.delta0 = 1;
    target.k0 = config.design->k0;
    target.resonant.push_back({config.design->resonant_k, omega});
    target.first_order.push_back({config.design->first_order_k, config.plant_a});
    return synthesize_controller(target.compose(), plant,
                                 config.design->causality_pole_factor);
  }
  return TransferFunction(Polynomial(explicit_c->num), Polynomial(explicit_c->den));
}

AxisBuild build_axis(const ExperimentConfig& config, char name, double omega,
                     const ReferenceSpec& ref,
                     const std::optional<ControllerCoeffs>& explicit_c,
                     double step_center) {
  const TransferFunction plant = plant_tf(config);
  const TransferFunction controller =
      controller_for_axis(config, plant, omega, explicit_c);

  LoopConfig loop{.controller = realize(controller),
                  .plant = realize(plant),
                  .quantizer = UniformQuantizer(config.delta),
                  .reference = ref,
                  .dt = config.dt,
                  .t_end = config.t_end,
                  .record_stride = config.record_stride,
                  .quantize_reference = config.quantize_reference,
                  .divergence_factor = config.divergence_factor};
  if (config.step)
    loop = apply_step_change(std::move(loop), config.step->t_step, step_center);

  return AxisBuild{.name = name,
                   .plant_tf = plant,
                   .controller_tf = controller,
                   .loop_tf = controller * plant,
                   .loop = std::move(loop)};
}

}  // namespace

ExperimentBuild build_experiment(const ExperimentConfig& config) {
  ExperimentBuild build;
  build.plan = plan_frequencies(config.trajectory);
  const auto [ref_x, ref_y] = axis_references(config.trajectory);

  if (config.axes != AxisSelection::YOnly)
    build.axes.push_back(build_axis(config, 'x', build.plan.omega_x, ref_x,
                                    config.controller_x,
                                    config.step ? config.step->new_center_x : 0.0));
  if (config.axes != AxisSelection::XOnly)
    build.axes.push_back(build_axis(config, 'y', build.plan.omega_y, ref_y,
                                    config.controller_y,
                                    config.step ? config.step->new_center_y : 0.0));
  return build;
}

}  // namespace qtrack::cli
