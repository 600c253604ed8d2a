#include "cpc/lts.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "cpc/reduction.hpp"

namespace cpc {

namespace {

std::vector<Transition> derive(const Process& P);

std::vector<Transition> derive_fresh(const Process& P, const NameSet& avoid) {
  auto ts = derive(P);
  for (auto& t : ts)
    if (!t.label.is_tau()) t = freshen(t, avoid);
  return ts;
}

void communicate(const Transition& a, const Transition& b0, std::vector<Transition>& out,
                 const std::optional<Process>& beside) {
  NameSet taken(a.label.extruded.begin(), a.label.extruded.end());
  Transition b = freshen(b0, taken);
  auto u = unify(*a.label.pattern, *b.label.pattern);
  if (!u) return;
  std::vector<Name> hidden = a.label.extruded;
  hidden.insert(hidden.end(), b.label.extruded.begin(), b.label.extruded.end());
  Process target = Process::restrict_all(
      hidden, Process::par(subst_proc(u->left, a.target), subst_proc(u->right, b.target)));
  if (beside) target = Process::par(target, *beside);
  out.push_back({Label::tau(), target});
}

std::vector<Transition> derive(const Process& P) {
  std::vector<Transition> out;
  switch (P.kind()) {
    case Process::Kind::Null:
    case Process::Kind::Success:
      break;

    case Process::Kind::Case:
      out.push_back({Label::out({}, P.pattern()), P.body()});
      break;

    case Process::Kind::Restrict: {
      Name n = P.name();
      NameSet avoid = P.free_names();
      avoid.insert(n);
      for (auto& t : derive(P.body())) {
        if (t.label.is_tau()) {
          out.push_back({t.label, Process::restrict(n, t.target)});
          continue;
        }
        t = freshen(t, avoid);
        auto cls = classify_names(*t.label.pattern);
        bool in_v = cls.variable.count(n) != 0;
        bool in_p = cls.protected_.count(n) != 0;
        if (!in_v && !in_p) {
          out.push_back({t.label, Process::restrict(n, t.target)});  // resnon
        } else if (in_v && !in_p) {
          t.label.extruded.push_back(n);  // open
          out.push_back(std::move(t));
        }
      }
      break;
    }

    case Process::Kind::Par: {
      const NameSet& avoid = P.free_names();
      auto left = derive_fresh(P.left(), avoid);
      auto right = derive_fresh(P.right(), avoid);
      for (const auto& t : left) out.push_back({t.label, Process::par(t.target, P.right())});
      for (const auto& t : right) out.push_back({t.label, Process::par(P.left(), t.target)});
      for (const auto& a : left) {
        if (a.label.is_tau()) continue;
        for (const auto& b : right)
          if (!b.label.is_tau()) communicate(a, b, out, std::nullopt);
      }
      break;
    }

    case Process::Kind::Replicate: {
      auto inner = derive_fresh(P.body(), P.free_names());
      for (const auto& t : inner) out.push_back({t.label, Process::par(t.target, P)});
      for (std::size_t i = 0; i < inner.size(); ++i) {
        if (inner[i].label.is_tau()) continue;
        for (std::size_t j = i; j < inner.size(); ++j)
          if (!inner[j].label.is_tau()) communicate(inner[i], inner[j], out, P);
      }
      break;
    }
  }
  return out;
}

void collect_label_names(const Pattern& p, const NameSet& extruded, std::map<Name, Name>& r) {
  if (p.is_compound()) {
    collect_label_names(p.left(), extruded, r);
    collect_label_names(p.right(), extruded, r);
    return;
  }
  bool bound = p.kind() == Pattern::Kind::Binding || (p.kind() == Pattern::Kind::Variable && extruded.count(p.name()));
  if (bound && !r.count(p.name())) r.emplace(p.name(), Name::slot(static_cast<std::uint32_t>(r.size())));
}

}  // namespace

Transition freshen(const Transition& t, const NameSet& avoid) {
  if (t.label.is_tau()) return t;
  std::map<Name, Name> r;
  for (Name n : t.label.extruded)
    if (avoid.count(n)) r.emplace(n, Name::fresh());
  for (Name n : binding_names(*t.label.pattern))
    if (avoid.count(n)) r.emplace(n, Name::fresh());
  if (r.empty()) return t;
  Transition out;
  for (Name n : t.label.extruded) {
    auto it = r.find(n);
    out.label.extruded.push_back(it == r.end() ? n : it->second);
  }
  out.label.pattern = rename_all(*t.label.pattern, r);
  out.target = rename_free(t.target, r);
  return out;
}

TransitionKey transition_key(const Transition& t) {
  if (t.label.is_tau()) return {"tau", canonical_key(t.target)};
  std::map<Name, Name> r;
  collect_label_names(*t.label.pattern, NameSet(t.label.extruded.begin(), t.label.extruded.end()), r);
  Label l;
  for (Name n : t.label.extruded) l.extruded.push_back(r.at(n));
  std::sort(l.extruded.begin(), l.extruded.end());
  l.pattern = rename_all(*t.label.pattern, r);
  return {to_string(l), canonical_key(rename_free(t.target, r))};
}

std::vector<Transition> transitions(const Process& P) {
  std::map<TransitionKey, Transition> unique;
  for (auto& t : derive(P)) {
    auto k = transition_key(t);
    unique.try_emplace(std::move(k), std::move(t));
  }
  std::vector<Transition> out;
  out.reserve(unique.size());
  for (auto& kv : unique) out.push_back(std::move(kv.second));
  return out;
}

std::string to_string(const Label& l, const PrintOptions& opts) {
  if (l.is_tau()) return opts.unicode ? "τ" : "tau";
  if (l.extruded.empty()) return to_string(*l.pattern, opts);
  std::string out = opts.unicode ? "ν{" : "nu{";
  for (std::size_t i = 0; i < l.extruded.size(); ++i) {
    if (i) out += ",";
    out += opts.name_text ? opts.name_text(l.extruded[i]) : l.extruded[i].text();
  }
  out += "} ";
  out += to_string(*l.pattern, opts);
  return out;
}

std::size_t meas(const Process& P) {
  switch (P.kind()) {
    case Process::Kind::Null:
    case Process::Kind::Success:
      return 0;
    case Process::Kind::Case:
      return 1;
    case Process::Kind::Par: {
      std::size_t a = meas(P.left()), b = meas(P.right());
      return a + b + a * b;
    }
    case Process::Kind::Replicate: {
      std::size_t m = meas(P.body());
      return m + m * m;
    }
    case Process::Kind::Restrict:
      return meas(P.body());
  }
  return 0;
}

bool tau_matches_reduction(const Process& P) {
  std::set<std::string> taus, reds;
  for (const auto& t : transitions(P))
    if (t.label.is_tau()) taus.insert(canonical_key(t.target));
  for (const auto& r : redexes(P)) reds.insert(r.key);
  return taus == reds;
}

}  // namespace cpc
