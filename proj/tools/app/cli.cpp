#include "cli.hpp"

#include "manifest.hpp"
#include "server.hpp"
#include "service.hpp"
#include "svg.hpp"

#include "semdisc/error.hpp"
#include "semdisc/text.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <csignal>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

namespace semdisc::app {

namespace {

struct Options
{
   std::string dataset;
   unsigned threads = 0; // 0: hardware concurrency
   std::vector<std::string> concepts;
   std::vector<int> colors;
   std::optional<int> experiment;
   std::optional<double> noise_scale;
   std::string out;
   std::string merit = "isolated";
   std::uint64_t samples = 100000;
   std::uint64_t seed = 0;
   std::vector<std::string> models;
   bool include_ties = false;
   std::string constraints;
   std::optional<std::string> objective;
   std::uint64_t limit = 10;
   std::string input;
   std::string to = "json";
   std::string host = "127.0.0.1";
   int port = 8787;
   bool allow_external = false;
   std::string ui;
};

void add_dataset(CLI::App* sub, Options& o)
{
   sub->add_option("--dataset", o.dataset, "Directory with the association CSVs (default: bundled UW-58 data)")
       ->type_name("DIR");
}

void add_threads(CLI::App* sub, Options& o)
{
   sub->add_option("--threads", o.threads, "Worker threads; results do not depend on it (default: all cores)")
       ->type_name("N");
}

void add_selection(CLI::App* sub, Options& o)
{
   sub->add_option("--concepts", o.concepts, "Concept names, comma separated")->delimiter(',')->type_name("A,B");
   sub->add_option("--colors", o.colors, "Color ids, comma separated")->delimiter(',')->type_name("ID,...");
   sub->add_option("--experiment", o.experiment, "Use a bundled experiment's concepts and palette")
       ->type_name("N");
}

void add_noise(CLI::App* sub, Options& o)
{
   sub->add_option("--noise-scale", o.noise_scale, "Rating noise: sigma = scale * x * (1 - x) (default 1.4)")
       ->type_name("S");
}

std::unique_ptr<CLI::App> build_app(Options& o)
{
   auto app = std::make_unique<CLI::App>("Semantic discriminability toolkit for color palettes", "semdisc");
   app->set_version_flag("--version", kToolVersion);
   app->require_subcommand(1);

   auto* convert = app->add_subcommand("convert", "Convert a colors CSV (LAB or xyY) to another color space");
   convert->add_option("--input", o.input, "Colors CSV: color_id,L,a,b or color_id,x,y,Y (default: dataset colors)")
       ->type_name("FILE");
   convert->add_option("--to", o.to, "Output: lab, xyY, lch, srgb (CSV) or json")
       ->check(CLI::IsMember({"lab", "xyY", "lch", "srgb", "json"}))
       ->capture_default_str();
   convert->add_option("--out", o.out, "Write to FILE instead of stdout")->type_name("FILE");
   add_dataset(convert, o);

   auto* distance = app->add_subcommand("distance", "Pairwise semantic and perceptual distances for a palette");
   add_selection(distance, o);
   add_noise(distance, o);
   distance->add_option("--out", o.out, "Output directory for delta_s.csv, delta_e.csv, distances.svg")
       ->type_name("DIR")
       ->required();
   add_dataset(distance, o);

   auto* assign = app->add_subcommand("assign", "Optimal concept-to-color assignment");
   add_selection(assign, o);
   assign->add_option("--merit", o.merit, "Merit function: isolated or balanced")
       ->check(CLI::IsMember({"isolated", "balanced"}))
       ->capture_default_str();
   add_dataset(assign, o);

   auto* disc = app->add_subcommand("discriminability", "Monte-Carlo assignment distribution and entropy index");
   add_selection(disc, o);
   add_noise(disc, o);
   disc->add_option("--samples", o.samples, "Number of Monte-Carlo samples")->capture_default_str();
   disc->add_option("--seed", o.seed, "RNG seed")->capture_default_str();
   add_threads(disc, o);
   add_dataset(disc, o);

   auto* predict = app->add_subcommand("predict", "Predicted accuracy and response time per stimulus");
   add_selection(predict, o);
   add_noise(predict, o);
   predict->add_option("--model", o.models, "Model presets, e.g. Acc2.2,RT2.2 (default: Acc/RT <experiment>.2)")
       ->delimiter(',')
       ->type_name("NAME,...");
   predict->add_flag("--include-ties", o.include_ties, "Keep stimuli whose pair has no correct answer");
   predict->add_option("--out", o.out, "Also write the predictions CSV to FILE")->type_name("FILE");
   add_dataset(predict, o);

   auto* optimize = app->add_subcommand("optimize", "Search for palettes meeting the construction constraints");
   optimize->add_option("--concepts", o.concepts, "Two concept names, comma separated")
       ->delimiter(',')
       ->type_name("A,B");
   optimize->add_option("--experiment", o.experiment, "Use a bundled experiment's concepts")->type_name("N");
   optimize->add_option("--constraints", o.constraints, "Constraint overrides as a JSON object or a JSON file path")
       ->type_name("JSON|FILE");
   optimize->add_option("--objective", o.objective, "Ranking: mean_delta_s, min_delta_s or min_delta_e")
       ->check(CLI::IsMember({"mean_delta_s", "min_delta_s", "min_delta_e"}));
   optimize->add_option("--limit", o.limit, "Maximum candidates to return (0 = all)")->capture_default_str();
   add_noise(optimize, o);
   add_dataset(optimize, o);

   auto* report = app->add_subcommand("report", "Distances, predictions and plots for one palette");
   add_selection(report, o);
   add_noise(report, o);
   report->add_option("--model", o.models, "Model presets (default: Acc/RT <experiment>.2)")
       ->delimiter(',')
       ->type_name("NAME,...");
   report->add_option("--out", o.out, "Output directory")->type_name("DIR")->required();
   add_dataset(report, o);

   auto* serve = app->add_subcommand("serve", "Run the HTTP/JSON API");
   serve->add_option("--host", o.host, "Bind address")->capture_default_str();
   serve->add_option("--port", o.port, "Port (0 picks a free one)")->capture_default_str();
   serve->add_flag("--allow-external", o.allow_external, "Permit binding a non-loopback address");
   serve->add_option("--ui", o.ui, "Serve a built workbench from DIR at /")->type_name("DIR");
   add_threads(serve, o);
   add_dataset(serve, o);
   return app;
}

void write_file(const std::filesystem::path& path, const std::string& content)
{
   if(path.has_parent_path()) {
      std::error_code ec;
      std::filesystem::create_directories(path.parent_path(), ec);
   }
   std::ofstream f(path, std::ios::binary);
   if(!f) fail(ErrorKind::io, "cannot write " + path.string());
   f << content;
   if(!f) fail(ErrorKind::io, "write failed: " + path.string());
}

void make_dir(const std::filesystem::path& dir)
{
   std::error_code ec;
   std::filesystem::create_directories(dir, ec);
   if(ec || !std::filesystem::is_directory(dir)) fail(ErrorKind::io, "cannot create directory " + dir.string());
}

json selection_request(const Options& o)
{
   json req = json::object();
   if(o.experiment) req["experiment"] = *o.experiment;
   if(!o.concepts.empty()) req["concepts"] = o.concepts;
   if(!o.colors.empty()) req["colors"] = o.colors;
   if(o.noise_scale) req["noise_scale"] = *o.noise_scale;
   return req;
}

std::string pairs_csv(const SemanticDistanceReport& r, const Matrix& m, const char* column)
{
   std::ostringstream s;
   s << "color_1,color_2," << column << '\n';
   for(const auto& [i, j] : unordered_pairs(r.size()))
      s << r.color_ids[i].value << ',' << r.color_ids[j].value << ',' << format_double(m(i, j)) << '\n';
   return s.str();
}

std::string predictions_csv(const PredictionResult& p)
{
   std::ostringstream s;
   s << "target,color_1,color_2,correct_color,delta_s,delta_e,assoc,pred_accuracy,pred_rt_ms\n";
   for(std::size_t i = 0; i < p.rows.size(); ++i) {
      const auto& r = p.rows[i];
      s << r.target << ',' << r.color_1.value << ',' << r.color_2.value << ',' << r.correct_color.value << ','
        << format_double(r.delta_s) << ',' << format_double(r.delta_e) << ',' << format_double(r.assoc) << ','
        << (p.accuracy.empty() ? "" : format_double(p.accuracy[i])) << ','
        << (p.rt_ms.empty() ? "" : format_double(p.rt_ms[i])) << '\n';
   }
   return s.str();
}

std::string colors_csv(const std::vector<ColorSpec>& colors, const std::string& to)
{
   std::ostringstream s;
   if(to == "lab") s << "color_id,L,a,b\n";
   if(to == "xyY") s << "color_id,x,y,Y\n";
   if(to == "lch") s << "color_id,L,C,h\n";
   if(to == "srgb") s << "color_id,hex,in_gamut\n";
   for(const auto& c : colors) {
      s << (c.id() ? std::to_string(c.id()->value) : std::string());
      if(to == "lab") s << ',' << format_double(c.lab().L) << ',' << format_double(c.lab().a) << ',' << format_double(c.lab().b);
      if(to == "xyY")
         s << ',' << format_double(c.xyY().x) << ',' << format_double(c.xyY().y) << ',' << format_double(c.xyY().Y);
      if(to == "lch") {
         const auto l = c.lch();
         s << ',' << format_double(l.L) << ',' << format_double(l.C) << ',' << format_double(l.h);
      }
      if(to == "srgb") {
         const auto r = c.srgb();
         s << ',' << r.hex() << ',' << (r.in_gamut ? "true" : "false");
      }
      s << '\n';
   }
   return s.str();
}

std::filesystem::path manifest_beside(const std::filesystem::path& file)
{
   auto p = file;
   p.replace_extension();
   return p.string() + ".manifest.json";
}

std::atomic<ApiServer*> g_server{nullptr};

extern "C" void on_signal(int)
{
   if(auto* s = g_server.load()) s->stop();
}

int run_command(CLI::App& app, Options& o, const std::vector<std::string>& args, std::ostream& out,
                std::ostream& err)
{
   const std::filesystem::path data_dir = o.dataset.empty() ? default_data_dir() : std::filesystem::path(o.dataset);
   const unsigned threads = o.threads ? o.threads : std::max(1u, std::thread::hardware_concurrency());

   if(app.got_subcommand("convert")) {
      std::vector<ColorSpec> colors;
      std::string id;
      std::filesystem::path input = o.input.empty() ? data_dir / kColorsFile : std::filesystem::path(o.input);
      std::ifstream in(input);
      if(!in) fail(ErrorKind::io, "cannot open " + input.string());
      colors = read_colors_csv(in);
      std::string text;
      if(o.to == "json") {
         json list = json::array();
         for(const auto& c : colors) list.push_back(to_json(c));
         text = json{{"dataset", input.filename().string()}, {"count", list.size()}, {"colors", std::move(list)}}.dump()
                + "\n";
      } else {
         text = colors_csv(colors, o.to);
      }
      if(o.out.empty()) {
         out << text;
      } else {
         write_file(o.out, text);
         write_file(manifest_beside(o.out),
                    run_manifest(args, input.filename().string(), {input}, std::nullopt, {o.out}).dump(2) + "\n");
      }
      return exit_ok;
   }

   const auto svc = Service::load(data_dir, threads);

   if(app.got_subcommand("distance")) {
      const auto req = selection_request(o);
      const auto report = svc.distance_report(req);
      const auto table = svc.table_for({std::nullopt, {report.concepts[0], report.concepts[1]}, report.color_ids});
      const std::filesystem::path dir(o.out);
      make_dir(dir);
      write_file(dir / "delta_s.csv", pairs_csv(report, report.delta_s, "delta_s"));
      write_file(dir / "delta_e.csv", pairs_csv(report, report.delta_e, "delta_e"));
      write_file(dir / "distances.svg",
                 plot_svg(table, {delta_s_panel(report, table), delta_e_panel(report, table)}));
      write_file(dir / "manifest.json",
                 run_manifest(args, svc.dataset().id, svc.dataset().files, std::nullopt,
                              {"delta_s.csv", "delta_e.csv", "distances.svg"})
                         .dump(2)
                     + "\n");
      out << to_json(report).dump() << '\n';
      return exit_ok;
   }

   if(app.got_subcommand("assign")) {
      auto req = selection_request(o);
      req["merit"] = o.merit;
      out << svc.assign(req).dump() << '\n';
      return exit_ok;
   }

   if(app.got_subcommand("discriminability")) {
      auto req = selection_request(o);
      req["samples"] = o.samples;
      req["seed"] = o.seed;
      out << svc.discriminability(req).dump() << '\n';
      return exit_ok;
   }

   if(app.got_subcommand("predict")) {
      auto req = selection_request(o);
      if(!o.models.empty()) req["models"] = o.models;
      req["include_ties"] = o.include_ties;
      const auto result = svc.predictions(req);
      if(!o.out.empty()) {
         write_file(o.out, predictions_csv(result));
         write_file(manifest_beside(o.out),
                    run_manifest(args, svc.dataset().id, svc.dataset().files, std::nullopt, {o.out}).dump(2) + "\n");
      }
      out << svc.predict_json(result).dump() << '\n';
      return result.rows.empty() ? exit_empty : exit_ok;
   }

   if(app.got_subcommand("optimize")) {
      json req = json::object();
      if(o.experiment) req["experiment"] = *o.experiment;
      if(!o.concepts.empty()) req["concepts"] = o.concepts;
      if(o.noise_scale) req["noise_scale"] = *o.noise_scale;
      req["limit"] = o.limit;
      json constraints = json::object();
      if(!o.constraints.empty()) {
         std::string text = o.constraints;
         if(std::filesystem::is_regular_file(text)) {
            std::ifstream f(text);
            if(!f) fail(ErrorKind::io, "cannot open " + text);
            std::ostringstream buf;
            buf << f.rdbuf();
            text = buf.str();
         }
         try {
            constraints = json::parse(text);
         } catch(const json::parse_error& e) {
            fail(ErrorKind::validation, std::string("--constraints: ") + e.what());
         }
      }
      if(o.objective) constraints["objective"] = *o.objective;
      if(!constraints.empty()) req["constraints"] = constraints;
      const auto result = svc.optimize(req);
      out << result.dump() << '\n';
      if(result["count"].get<std::size_t>() == 0) {
         err << "semdisc: no palette satisfies the constraints\n";
         return exit_empty;
      }
      return exit_ok;
   }

   if(app.got_subcommand("report")) {
      auto req = selection_request(o);
      const auto report = svc.distance_report(req);
      if(!o.models.empty()) req["models"] = o.models;
      const auto pred = svc.predictions(req);
      const auto table = svc.table_for(pred.selection);
      const std::filesystem::path dir(o.out);
      make_dir(dir);
      write_file(dir / "delta_s.csv", pairs_csv(report, report.delta_s, "delta_s"));
      write_file(dir / "delta_e.csv", pairs_csv(report, report.delta_e, "delta_e"));
      write_file(dir / "predictions.csv", predictions_csv(pred));
      write_file(dir / "distances.svg", plot_svg(table, {delta_s_panel(report, table), delta_e_panel(report, table)}));
      std::vector<PlotPanel> panels{delta_s_panel(report, table), delta_e_panel(report, table)};
      if(!pred.accuracy.empty()) panels.push_back(accuracy_panel(pred, table));
      write_file(dir / "report.svg", plot_svg(table, panels));
      const json body = {{"distance", to_json(report)}, {"predictions", svc.predict_json(pred)}};
      write_file(dir / "report.json", body.dump(2) + "\n");
      write_file(dir / "manifest.json",
                 run_manifest(args, svc.dataset().id, svc.dataset().files, std::nullopt,
                              {"delta_s.csv", "delta_e.csv", "predictions.csv", "distances.svg", "report.svg",
                               "report.json"})
                         .dump(2)
                     + "\n");
      out << body.dump() << '\n';
      return exit_ok;
   }

   if(app.got_subcommand("serve")) {
      const bool loopback = o.host == "127.0.0.1" || o.host == "localhost" || o.host == "::1";
      if(!loopback && !o.allow_external)
         fail(ErrorKind::validation, "refusing to bind " + o.host + " without --allow-external");
      std::optional<std::filesystem::path> ui;
      if(!o.ui.empty()) {
         if(!std::filesystem::is_directory(o.ui)) fail(ErrorKind::io, "UI directory not found: " + o.ui);
         ui = o.ui;
      }
      ApiServer server(svc, ui);
      if(!server.bind(o.host, o.port))
         fail(ErrorKind::io, "cannot bind " + o.host + ":" + std::to_string(o.port));
      err << "semdisc: serving " << svc.dataset().id << " on http://" << o.host << ':' << server.port() << "/v1\n";
      g_server = &server;
      std::signal(SIGINT, on_signal);
      std::signal(SIGTERM, on_signal);
      server.listen_after_bind();
      g_server = nullptr;
      return exit_ok;
   }
   return exit_usage;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
   Options o;
   auto app = build_app(o);
   std::vector<const char*> argv;
   for(const auto& a : args) argv.push_back(a.c_str());
   try {
      app->parse(static_cast<int>(argv.size()), argv.data());
   } catch(const CLI::ParseError& e) {
      const int code = app->exit(e, out, err);
      return code == 0 ? exit_ok : exit_usage;
   }
   try {
      return run_command(*app, o, args, out, err);
   } catch(const Error& e) {
      err << "semdisc: " << e.what() << '\n';
      switch(e.kind()) {
      case ErrorKind::infeasible: return exit_empty;
      case ErrorKind::io: return exit_io;
      default: return exit_usage;
      }
   } catch(const nlohmann::json::exception& e) {
      err << "semdisc: " << e.what() << '\n';
      return exit_usage;
   } catch(const std::exception& e) {
      err << "semdisc: " << e.what() << '\n';
      return exit_io;
   }
}

std::vector<std::string> subcommand_names()
{
   Options o;
   auto app = build_app(o);
   std::vector<std::string> out;
   for(const auto* sub : app->get_subcommands({})) out.push_back(sub->get_name());
   return out;
}

std::vector<std::string> subcommand_flags(const std::string& name)
{
   Options o;
   auto app = build_app(o);
   std::vector<std::string> out;
   for(const auto* opt : app->get_subcommand(name)->get_options())
      for(const auto& l : opt->get_lnames()) out.push_back("--" + l);
   return out;
}

} // namespace semdisc::app
