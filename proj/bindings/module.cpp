#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "honeysim/config.hpp"
#include "honeysim/evaluation.hpp"
#include "honeysim/honeypot.hpp"
#include "honeysim/techniques.hpp"

namespace py = pybind11;
using namespace honeysim;

namespace {

py::dict spec_to_dict(const TechniqueSpec& spec) {
  py::dict d;
  d["id"] = static_cast<int>(spec.id);
  d["family"] = std::string(to_string(spec.family));
  if (spec.family == TechniqueFamily::Consume) {
    d["verb"] = std::string(to_string(spec.verb));
    d["target_source"] = std::string(to_string(spec.target_source));
    d["ordering"] = std::string(to_string(spec.ordering));
  } else {
    d["source"] = std::string(to_string(spec.source));
    d["language"] = std::string(to_string(spec.language));
    d["word_order"] = std::string(to_string(spec.word_order));
    d["mentions"] = spec.mentions;
    d["hashtags"] = spec.hashtags;
  }
  return d;
}

py::dict row_to_dict(const TechniqueReportRow& row) {
  py::dict d;
  d["technique"] = static_cast<int>(row.technique);
  d["n"] = row.n;
  d["n_bots"] = row.n_bots;
  d["n_humans"] = row.n_humans;
  d["n_interactions"] = row.n_interactions;
  d["n_unique_users"] = row.n_unique_users;
  d["n_bots_unique"] = row.n_bots_unique;
  d["n_humans_unique"] = row.n_humans_unique;
  if (row.precision) d["precision"] = *row.precision;
  if (row.precision_unique) d["precision_unique"] = *row.precision_unique;
  if (row.recall) d["recall"] = *row.recall;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "deterministic social-honeypot campaign simulator";

  m.def("catalogue", [] {
    py::list out;
    for (const auto& spec : technique_catalogue()) out.append(spec_to_dict(spec));
    return out;
  });

  m.def(
      "figure2_combinations",
      [](const std::string& data_dir) {
        std::string dir = data_dir.empty() ? default_data_dir() : data_dir;
        py::list out;
        for (const auto& cfg : load_figure2_matrix(figure2_fixture_path(dir))) {
          py::dict d;
          d["name"] = cfg.name;
          py::list techniques;
          for (TechniqueId t : cfg.techniques) techniques.append(static_cast<int>(t));
          d["techniques"] = techniques;
          d["generation_only"] = generation_only(cfg);
          out.append(d);
        }
        return out;
      },
      py::arg("data_dir") = "");

  m.def(
      "run_campaign",
      [](const std::string& config_json, const std::string& output_dir) {
        CampaignConfig config = parse_config(config_json);
        if (!output_dir.empty()) config.output_dir = output_dir;
        RunOutputs out = run_campaign_to_dir(config);
        py::dict d;
        d["directory"] = out.directory;
        d["manifest_hash"] = out.manifest_hash;
        d["overall_precision"] = out.report.total.precision ? py::object(py::float_(*out.report.total.precision))
                                                            : py::object(py::none());
        d["overall_recall"] = out.recall.overall.recall;
        d["attracted_users"] = out.report.total.n_unique_users;
        py::list rows;
        for (const auto& row : out.report.rows) rows.append(row_to_dict(row));
        d["technique_rows"] = rows;
        d["total"] = row_to_dict(out.report.total);
        return d;
      },
      py::arg("config_json"), py::arg("output_dir") = "");

  m.def(
      "run_campaign_file",
      [](const std::string& config_path, const std::string& output_dir) {
        CampaignConfig config = load_config(config_path);
        if (!output_dir.empty()) config.output_dir = output_dir;
        RunOutputs out = run_campaign_to_dir(config);
        py::dict d;
        d["directory"] = out.directory;
        d["manifest_hash"] = out.manifest_hash;
        return d;
      },
      py::arg("config_path"), py::arg("output_dir") = "");

  m.def(
      "classify",
      [](double score, double threshold) {
        return classify(score, threshold) == UserClass::Automated ? "automated" : "human";
      },
      py::arg("score"), py::arg("threshold") = 0.5);

  m.def(
      "shuffle_words",
      [](std::vector<std::string> tokens, std::uint64_t seed) {
        Rng rng(seed);
        return shuffle_words(std::move(tokens), rng);
      },
      py::arg("tokens"), py::arg("seed"));

  m.def(
      "pseudo_translate",
      [](const std::vector<std::string>& tokens, const std::string& language,
         const std::string& data_dir) {
        auto lang = language_from_string(language);
        if (!lang) throw std::invalid_argument("unknown language tag '" + language + "'");
        std::string dir = data_dir.empty() ? default_data_dir() : data_dir;
        Lexicons lexicons = load_lexicons(dir);
        return pseudo_translate(tokens, *lang, lexicons);
      },
      py::arg("tokens"), py::arg("language"), py::arg("data_dir") = "");

  m.def("default_data_dir", &default_data_dir);

  m.attr("__version__") = "0.1.0";
}
