// Command-line surface: gencov, sites, maxdist, lambertw, indep, mesp, synth.
//
// Exit codes: 0 success, 2 configuration/argument error, 3 data error,
// 4 numeric failure.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include <nlohmann/json.hpp>

#include "mesgencov/covariance.hpp"
#include "mesgencov/gaussianize.hpp"
#include "mesgencov/matio.hpp"
#include "mesgencov/mespcheck.hpp"
#include "mesgencov/pipeline.hpp"
#include "mesgencov/siteselect.hpp"
#include "mesgencov/stattests.hpp"
#include "mesgencov/svgplot.hpp"
#include "mesgencov/synth.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace mesgencov;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitData = 3;
constexpr int kExitNumeric = 4;

std::string resolve_data_dir(const std::string& arg) {
  if (!arg.empty()) return arg;
  if (const char* env = std::getenv("MESGENCOV_DATA")) return env;
  throw DataError("no data directory (use --data-dir or set MESGENCOV_DATA)");
}

Chemical parse_chemical(const std::string& s) {
  auto c = chemical_from_string(s);
  if (!c) throw DataError("unknown chemical '" + s + "'");
  return *c;
}

int run_gencov(const std::string& config_path, const std::string& data_dir_arg,
               const std::string& out_dir) {
  GetCovConfig cfg;
  try {
    cfg = config_from_json_file(config_path);
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  }
  LoadedData data;
  try {
    data = load_data_dir(resolve_data_dir(data_dir_arg));
  } catch (const std::exception& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kExitData;
  }

  fs::create_directories(out_dir);
  CovOutput out;
  try {
    out = get_cov(cfg, data, out_dir);
  } catch (const NumericError& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kExitData;
  }

  write_cov_csv(out.cov, out.residual_data.column_names,
                (fs::path(out_dir) / "cov.csv").string());
  write_labeled_csv(out.residual_data.values, out.residual_data.column_names,
                    (fs::path(out_dir) / "residuals.csv").string());
  write_labeled_csv(out.residual_data_na.values, out.residual_data_na.column_names,
                    (fs::path(out_dir) / "residualsNA.csv").string());
  {
    std::ofstream rep((fs::path(out_dir) / "report.json").string());
    rep << report_json(out, cfg);
  }

  std::cout << render_mvn(out.mvn) << "\n";
  for (const auto& [site, rosner_rep] : out.rosner_tests) {
    std::cout << "Rosner test, site " << site << "\n" << render_rosner(rosner_rep) << "\n";
  }
  for (const auto& w : out.warnings) std::cerr << "warning: " << w << "\n";
  std::cout << "wrote " << (fs::path(out_dir) / "report.json").string() << "\n";
  return 0;
}

json site_list_json(const SiteListResult& r) {
  json sites = json::array();
  for (const auto& s : r.final_list) sites.push_back(s.str());
  json counts;
  for (const auto& [site, c] : r.counts) counts[site.str()] = c;
  return json{{"finalList", sites},
              {"counts", counts},
              {"startDate", r.start_date},
              {"endDate", r.end_date},
              {"comp", r.comp}};
}

void print_site_list(const SiteListResult& r, const std::string& out_dir,
                     const std::string& name) {
  for (size_t i = 0; i < r.final_list.size(); ++i)
    std::cout << (i ? " " : "") << "\"" << r.final_list[i].str() << "\"";
  std::cout << "\n";
  for (const auto& w : r.warnings) std::cerr << "warning: " << w << "\n";
  if (!out_dir.empty()) {
    fs::create_directories(out_dir);
    std::ofstream out((fs::path(out_dir) / name).string());
    out << site_list_json(r).dump(2) << "\n";
  }
}

int run_matrix_input(const std::string& input, LabeledMatrix& lm) {
  if (input.size() > 4 && input.substr(input.size() - 4) == ".mat") {
    const MatArray arr = read_mat(input);
    lm.values = arr.values;
    for (int i = 0; i < arr.values.cols(); ++i) lm.labels.push_back("V" + std::to_string(i + 1));
  } else {
    lm = read_labeled_csv(input);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"NADP/NTN precipitation chemistry to covariance matrices"};
  app.require_subcommand(1);

  // gencov
  auto* gencov = app.add_subcommand("gencov", "run the full covariance pipeline");
  std::string config_path, data_dir, out_dir = "out";
  gencov->add_option("--config", config_path, "JSON configuration")->required();
  gencov->add_option("--data-dir", data_dir, "directory with weekly.csv/daily.csv/sites.csv");
  gencov->add_option("--out-dir", out_dir, "output directory");

  // sites / maxdist share the positional signature
  std::string s_start, s_end, s_comp = "SO4", s_region;
  int s_count = 36, s_min_weeks = 104, s_rank = 1;
  auto* sites_cmd = app.add_subcommand("sites", "sites with the most weekly data");
  sites_cmd->add_option("start", s_start, "start date, m/d/y H:M")->required();
  sites_cmd->add_option("end", s_end, "end date, m/d/y H:M")->required();
  sites_cmd->add_option("count", s_count, "number of sites")->required();
  sites_cmd->add_option("minweeks", s_min_weeks, "minimum weekly sample")->required();
  sites_cmd->add_option("comp", s_comp, "chemical")->required();
  sites_cmd->add_option("region", s_region, "region filter: \"\", N, S or W");
  sites_cmd->add_option("--data-dir", data_dir);
  sites_cmd->add_option("--out-dir", out_dir);
  std::string region_table_path;
  sites_cmd->add_option("--region-table", region_table_path, "state,region CSV override");

  auto* maxdist = app.add_subcommand("maxdist", "geographically sparse site list");
  maxdist->add_option("start", s_start)->required();
  maxdist->add_option("end", s_end)->required();
  maxdist->add_option("count", s_count)->required();
  maxdist->add_option("minweeks", s_min_weeks)->required();
  maxdist->add_option("comp", s_comp)->required();
  maxdist->add_option("rank", s_rank, "data rank of the first site (1 = most data)");
  maxdist->add_option("--data-dir", data_dir);
  maxdist->add_option("--out-dir", out_dir);

  // lambertw
  std::string input_path;
  bool plot_multi = false, write_mat_flag = false;
  auto* lambertw = app.add_subcommand("lambertw", "Gaussianize a residual matrix");
  lambertw->add_option("--input", input_path, "residual CSV (header + rows, NA for missing)")
      ->required();
  lambertw->add_flag("--plot-multi", plot_multi);
  lambertw->add_flag("--write-mat", write_mat_flag);
  lambertw->add_option("--out-dir", out_dir);

  // indep
  double alpha = 0.05;
  auto* indep = app.add_subcommand("indep", "likelihood-ratio independence test");
  indep->add_option("--input", input_path, "residual CSV")->required();
  indep->add_option("--alpha", alpha, "significance level");

  // mesp
  int subset_size = 2;
  auto* mesp = app.add_subcommand("mesp", "greedy max-entropy subset check");
  mesp->add_option("--input", input_path, "cov.csv or covSites.mat")->required();
  mesp->add_option("--size", subset_size, "subset size")->required();

  // synth
  SynthSpec synth_spec;
  auto* synth = app.add_subcommand("synth", "generate a synthetic fixture");
  synth->add_option("--seed", synth_spec.seed);
  synth->add_option("--sites", synth_spec.n_sites);
  synth->add_option("--months", synth_spec.months);
  synth->add_option("--missing-rate", synth_spec.missing_rate);
  synth->add_option("--sigma", synth_spec.noise_sigma);
  synth->add_option("--delta", synth_spec.heavy_tail_delta, "Lambert W tail parameter");
  synth->add_option("--r", synth_spec.model.r);
  synth->add_option("--k", synth_spec.model.k);
  synth->add_option("--out-dir", out_dir)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (gencov->parsed()) return run_gencov(config_path, data_dir, out_dir);

    if (sites_cmd->parsed() || maxdist->parsed()) {
      SiteQuery q;
      try {
        q.start = parse_datetime(s_start);
        q.end = parse_datetime(s_end);
        q.count = s_count;
        q.min_weeks = s_min_weeks;
        q.chemical = parse_chemical(s_comp);
        if (sites_cmd->parsed()) q.region = region_from_string(s_region);
        q.start_rank = s_rank;
      } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
      }
      const LoadedData data = load_data_dir(resolve_data_dir(data_dir));
      if (sites_cmd->parsed()) {
        const RegionTable table = region_table_path.empty()
                                      ? RegionTable::defaults()
                                      : RegionTable::from_csv(region_table_path);
        print_site_list(get_sites(q, data.weekly, table), out_dir, "sites.json");
      } else {
        if (data.meta.empty()) throw DataError("maxdist requires sites.csv metadata");
        print_site_list(max_dist_sites(q, data.weekly, data.meta), out_dir, "maxdist.json");
      }
      return 0;
    }

    if (lambertw->parsed()) {
      LabeledMatrix lm;
      run_matrix_input(input_path, lm);
      const auto out = lambertw_transform(lm.values, lm.labels);
      std::cout << render_mvn(out.mvn) << "\n";
      for (const auto& w : out.warnings) std::cerr << "warning: " << w << "\n";
      fs::create_directories(out_dir);
      write_labeled_csv(out.new_residuals, lm.labels,
                        (fs::path(out_dir) / "newResiduals.csv").string());
      write_cov_csv(out.cov, lm.labels, (fs::path(out_dir) / "cov.csv").string());
      if (write_mat_flag)
        write_mat(out.cov, (fs::path(out_dir) / "covSites.mat").string());
      if (plot_multi) {
        ResidualMatrix rm;
        rm.column_names = lm.labels;
        rm.values = out.new_residuals;
        plot_multivariate_qq(rm, (fs::path(out_dir) / "mahalanobis_qq.svg").string());
      }
      return 0;
    }

    if (indep->parsed()) {
      LabeledMatrix lm;
      run_matrix_input(input_path, lm);
      const auto rep = independence_test(lm.values, alpha);
      std::printf("  chisq dist likelihood ratio   tchisq  independent\n");
      std::printf("1 %26.6g %8.2f %12s\n", rep.u, rep.threshold,
                  rep.independent ? "TRUE" : "FALSE");
      return 0;
    }

    if (mesp->parsed()) {
      LabeledMatrix lm;
      run_matrix_input(input_path, lm);
      MespInstance inst{lm.values, subset_size};
      const auto sol = greedy_interchange(inst);
      std::cout << "subset:";
      for (int i : sol.subset) std::cout << " " << lm.labels[i];
      std::printf("\nlogdet: %.10g\n", sol.value);
      return 0;
    }

    if (synth->parsed()) {
      const SynthData data = generate_synthetic(synth_spec);
      write_synthetic(data, out_dir);
      std::cout << "wrote fixture with " << synth_spec.n_sites << " sites, "
                << synth_spec.months << " months to " << out_dir << "\n";
      return 0;
    }
  } catch (const ParseError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const NumericError& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kExitData;
  }
  return 0;
}
