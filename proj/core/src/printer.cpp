#include "cpc/printer.hpp"

namespace cpc {

namespace {

class Printer {
 public:
  explicit Printer(const PrintOptions& o) : opts_(o) {}

  std::string name(Name n) const { return opts_.name_text ? opts_.name_text(n) : n.text(); }

  void pattern(const Pattern& p, std::string& out) const {
    switch (p.kind()) {
      case Pattern::Kind::Binding:
        out += opts_.unicode ? "λ" : "\\";
        out += name(p.name());
        return;
      case Pattern::Kind::Variable:
        out += name(p.name());
        return;
      case Pattern::Kind::Protected:
        if (opts_.unicode) {
          out += "⌜" + name(p.name()) + "⌝";
        } else {
          out += "#" + name(p.name());
        }
        return;
      case Pattern::Kind::Compound:
        // Left-associative: only a compound on the right needs parentheses.
        pattern(p.left(), out);
        out += opts_.unicode ? " • " : " . ";
        if (p.right().is_compound()) {
          out += "(";
          pattern(p.right(), out);
          out += ")";
        } else {
          pattern(p.right(), out);
        }
        return;
    }
  }

  // Levels: 0 = parallel, 1 = prefix (case, replication, restriction).
  void process(const Process& P, int level, std::string& out) const {
    switch (P.kind()) {
      case Process::Kind::Null:
        out += "0";
        return;
      case Process::Kind::Success:
        out += "ok";
        return;
      case Process::Kind::Par:
        if (level > 0) out += "(";
        process(P.left(), 1, out);
        out += " | ";
        process(P.right(), 0, out);
        if (level > 0) out += ")";
        return;
      case Process::Kind::Case: {
        std::string pat;
        pattern(P.pattern(), pat);
        out += pat;
        out += opts_.unicode ? " → " : " -> ";
        process(P.body(), 1, out);
        return;
      }
      case Process::Kind::Replicate:
        out += "!";
        if (P.body().is(Process::Kind::Case) || P.body().is(Process::Kind::Par)) {
          out += "(";
          process(P.body(), 0, out);
          out += ")";
        } else {
          process(P.body(), 1, out);
        }
        return;
      case Process::Kind::Restrict:
        out += opts_.unicode ? "(ν" : "(new ";
        out += name(P.name());
        out += ") ";
        process(P.body(), 1, out);
        return;
    }
  }

 private:
  const PrintOptions& opts_;
};

}  // namespace

std::string to_string(const Pattern& p, const PrintOptions& opts) {
  std::string out;
  Printer(opts).pattern(p, out);
  return out;
}

std::string to_string(const Process& P, const PrintOptions& opts) {
  std::string out;
  Printer(opts).process(P, 0, out);
  return out;
}

std::string to_string(const Substitution& s, const PrintOptions& opts) {
  Printer pr(opts);
  std::string out = "{";
  bool first = true;
  for (const auto& [x, p] : s) {
    if (!first) out += ", ";
    first = false;
    pr.pattern(p, out);
    out += "/" + pr.name(x);
  }
  return out + "}";
}

std::string to_string(const NameSet& names, const PrintOptions& opts) {
  Printer pr(opts);
  std::string out = "{";
  bool first = true;
  for (Name n : names) {
    if (!first) out += ", ";
    first = false;
    out += pr.name(n);
  }
  return out + "}";
}

}  // namespace cpc
