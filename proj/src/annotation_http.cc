// Copyright 2026 The FtF Toolkit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ftf/annotation_http.h"

#include <httplib.h>

#include "ftf/report.h"

namespace ftf {
namespace {

void SendJson(httplib::Response& res, const OrderedJson& body, int status = 200) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void SendError(httplib::Response& res, int status, std::string_view kind,
               const std::string& message, OrderedJson extra = OrderedJson::object()) {
  OrderedJson body{{"error", kind}, {"message", message}};
  for (auto& [k, v] : extra.items()) body[k] = v;
  SendJson(res, body, status);
}

// Maps library exceptions onto HTTP statuses; everything funnels through here.
template <typename Fn>
void Guard(httplib::Response& res, Fn&& fn) {
  try {
    fn();
  } catch (const ValidationFailed& e) {
    SendError(res, 422, "ValidationFailed", e.what(), {{"report", ToJson(e.report())}});
  } catch (const UnknownAnnotator& e) {
    SendError(res, 403, "UnknownAnnotator", e.what());
  } catch (const UnknownArgument& e) {
    SendError(res, 404, "UnknownArgument", e.what());
  } catch (const TaskClosed& e) {
    SendError(res, 409, "TaskClosed", e.what());
  } catch (const UnknownValueError& e) {
    SendError(res, 400, "UnknownValue", e.what());
  } catch (const RecordError& e) {
    SendError(res, 400, "BadRecord", e.what());
  } catch (const OrderedJson::exception& e) {
    SendError(res, 400, "BadJson", e.what());
  } catch (const std::invalid_argument& e) {
    SendError(res, 400, "BadRequest", e.what());
  } catch (const std::exception& e) {
    SendError(res, 500, "Internal", e.what());
  }
}

std::optional<std::string> Param(const httplib::Request& req, const char* name) {
  if (!req.has_param(name)) return std::nullopt;
  return req.get_param_value(name);
}

OrderedJson TemplatesJson(const Inventory& inventory, FallacyType type) {
  OrderedJson templates = OrderedJson::array();
  for (const TemplateSpec& spec : inventory.ForType(type)) {
    OrderedJson rendered = OrderedJson::object();
    for (auto [name, phrasing] : {std::pair{"schema", Phrasing::Schema},
                                  {"nl1", Phrasing::NL1},
                                  {"nl2", Phrasing::NL2},
                                  {"pl", Phrasing::PL}}) {
      const RenderedTemplate r = Render(spec, nullptr, phrasing);
      rendered[name] = {{"premise_p", r.premise_p},
                        {"premise_p_prime", r.premise_p_prime},
                        {"conclusion", r.conclusion}};
    }
    OrderedJson required = OrderedJson::array(), optional = OrderedJson::array();
    for (SlotRole r : spec.required_slots) required.push_back(RoleName(r));
    for (SlotRole r : spec.optional_slots) optional.push_back(RoleName(r));
    templates.push_back({{"number", spec.number},
                         {"catch_all", spec.is_catch_all()},
                         {"required_roles", required},
                         {"optional_roles", optional},
                         {"rendered", rendered}});
  }
  OrderedJson roles = OrderedJson::array();
  for (SlotRole r : LegalRoles(type)) roles.push_back(RoleName(r));
  return {{"fallacy_type", ToString(type)},
          {"inventory_version", inventory.version()},
          {"roles", roles},
          {"templates", templates}};
}

}  // namespace

struct ApiServer::Impl {
  AnnotationService& service;
  ApiServerOptions options;
  httplib::Server server;

  Impl(AnnotationService& s, ApiServerOptions o) : service(s), options(std::move(o)) {
    Routes();
  }

  void Routes() {
    server.Get("/api/v1/health", [this](const httplib::Request&, httplib::Response& res) {
      SendJson(res, {{"ok", true},
                     {"journal_length", service.journal_length()},
                     {"inventory_version", service.inventory().version()}});
    });

    server.Get("/api/v1/arguments", [this](const httplib::Request& req, httplib::Response& res) {
      Guard(res, [&] {
        std::optional<FallacyType> type;
        if (auto t = Param(req, "fallacy_type")) type = ParseFallacyType(*t);
        OrderedJson list = OrderedJson::array();
        for (const auto& a : service.arguments()) {
          if (!type || a.fallacy_type == *type) list.push_back(ToJson(a));
        }
        SendJson(res, {{"arguments", list}});
      });
    });

    server.Get(R"(/api/v1/templates/([a-z_]+))",
               [this](const httplib::Request& req, httplib::Response& res) {
                 Guard(res, [&] {
                   SendJson(res, TemplatesJson(service.inventory(),
                                               ParseFallacyType(req.matches[1].str())));
                 });
               });

    server.Get("/api/v1/tasks", [this](const httplib::Request& req, httplib::Response& res) {
      Guard(res, [&] {
        std::string annotator = Param(req, "annotator").value_or(
            req.get_header_value("X-Annotator-Id"));
        if (annotator.empty()) throw std::invalid_argument("missing ?annotator=");
        TaskFilter filter;
        if (auto t = Param(req, "fallacy_type")) filter.fallacy_type = ParseFallacyType(*t);
        if (auto s = Param(req, "status")) filter.status = ParseTaskStatus(*s);
        OrderedJson list = OrderedJson::array();
        for (const auto& t : service.ListTasks(annotator, filter)) list.push_back(ToJson(t));
        SendJson(res, {{"annotator", annotator}, {"tasks", list}});
      });
    });

    server.Post("/api/v1/tasks", [this](const httplib::Request& req, httplib::Response& res) {
      Guard(res, [&] {
        const OrderedJson body = OrderedJson::parse(req.body);
        const JournalEvent e = service.Assign(body.at("annotator_id").get<std::string>(),
                                              body.at("argument_id").get<std::string>());
        SendJson(res, ToJson(e), 201);
      });
    });

    server.Post("/api/v1/annotations",
                [this](const httplib::Request& req, httplib::Response& res) {
                  Guard(res, [&] {
                    OrderedJson body = OrderedJson::parse(req.body);
                    std::string annotator = req.get_header_value("X-Annotator-Id");
                    if (annotator.empty() && body.contains("annotator_id")) {
                      annotator = body["annotator_id"].get<std::string>();
                    }
                    if (annotator.empty()) throw std::invalid_argument("missing X-Annotator-Id");
                    if (!body.contains("annotator_id")) body["annotator_id"] = annotator;
                    const JournalEvent e = service.Submit(annotator, AnnotationFromJson(body));
                    SendJson(res, ToJson(e), 201);
                  });
                });

    server.Post("/api/v1/adjudications",
                [this](const httplib::Request& req, httplib::Response& res) {
                  Guard(res, [&] {
                    OrderedJson body = OrderedJson::parse(req.body);
                    body["annotator_id"] = kConsensusAnnotator;
                    SendJson(res, ToJson(service.Adjudicate(AnnotationFromJson(body))), 201);
                  });
                });

    server.Get("/api/v1/agreement", [this](const httplib::Request&, httplib::Response& res) {
      Guard(res, [&] { SendJson(res, ToJson(service.LiveAgreement())); });
    });

    server.Get("/api/v1/coverage", [this](const httplib::Request&, httplib::Response& res) {
      Guard(res, [&] {
        auto report = service.LiveCoverage();
        SendJson(res, report ? ToJson(*report)
                             : OrderedJson{{"all", nullptr},
                                           {"per_annotator", OrderedJson::object()}});
      });
    });

    server.Get("/api/v1/export", [this](const httplib::Request& req, httplib::Response& res) {
      Guard(res, [&] {
        std::optional<std::uint64_t> at;
        if (auto k = Param(req, "at")) at = std::stoull(*k);
        const ExportPolicy policy =
            ParseExportPolicy(Param(req, "policy").value_or("annotators"));
        const DatasetExport ex = service.Export(at, policy);
        OrderedJson args = OrderedJson::array(), anns = OrderedJson::array();
        for (const auto& a : ex.arguments) args.push_back(ToJson(a));
        for (const auto& a : ex.annotations) anns.push_back(ToJson(a));
        SendJson(res, {{"at", ex.at},
                       {"policy", ToString(policy)},
                       {"arguments", args},
                       {"annotations", anns}});
      });
    });

    if (options.static_dir) server.set_mount_point("/", options.static_dir->string());
  }
};

ApiServer::ApiServer(AnnotationService& service, ApiServerOptions options)
    : impl_(std::make_unique<Impl>(service, std::move(options))) {}

ApiServer::~ApiServer() = default;

int ApiServer::Bind(const std::string& host, int port) {
  if (port == 0) return impl_->server.bind_to_any_port(host);
  return impl_->server.bind_to_port(host, port) ? port : -1;
}

bool ApiServer::Listen() { return impl_->server.listen_after_bind(); }

void ApiServer::Stop() { impl_->server.stop(); }

}  // namespace ftf
