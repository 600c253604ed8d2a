#include "cpc/congruence.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <unordered_map>

#include "cpc/printer.hpp"

namespace cpc {

namespace {

// A restricted name is renamed fresh only if it clashes with a free name of
// the whole process or with a restriction already pulled out. The renaming
// is collected in `ren` and applied once per thread.
struct Flattener {
  const NameSet& top_fn;
  NameSet pulled;
  Flat out;

  void run(const Process& P, const std::map<Name, Name>& ren) {
    switch (P.kind()) {
      case Process::Kind::Null:
        return;
      case Process::Kind::Par:
        run(P.left(), ren);
        run(P.right(), ren);
        return;
      case Process::Kind::Restrict: {
        Name n = P.name();
        if (!P.body().free_names().count(n)) {
          run(P.body(), ren);
          return;
        }
        std::map<Name, Name> inner = ren;
        if (top_fn.count(n) || pulled.count(n)) {
          Name m = Name::fresh();
          inner[n] = m;
          n = m;
        } else {
          inner.erase(n);
        }
        pulled.insert(n);
        out.restricted.push_back(n);
        run(P.body(), inner);
        return;
      }
      default:
        out.threads.push_back(ren.empty() ? P : rename_free(P, ren));
        return;
    }
  }
};

// Permutations beyond this many are not tried when breaking ties between
// threads that differ only in their restricted names.
constexpr std::size_t kMaxTieOrders = 720;

CanonicalForm canon(const Process& P, std::uint32_t base);

Process canon_thread_uncached(const Process& t, std::uint32_t base);

// Untouched threads are shared between successive states, so their
// canonical forms are remembered by node identity. Keys hold a reference
// to the input so that ids are never reused while cached.
Process canon_thread(const Process& t, std::uint32_t base) {
  if (!t.is(Process::Kind::Case) && !t.is(Process::Kind::Replicate)) return t;
  struct Entry {
    Process input, output;
  };
  thread_local std::unordered_map<const void*, std::vector<std::pair<std::uint32_t, Entry>>> memo;
  thread_local std::size_t entries = 0;
  if (auto it = memo.find(t.id()); it != memo.end())
    for (const auto& [b, e] : it->second)
      if (b == base) return e.output;
  Process out = canon_thread_uncached(t, base);
  if (entries >= (1u << 16)) {
    memo.clear();
    entries = 0;
  }
  memo[t.id()].emplace_back(base, Entry{t, out});
  ++entries;
  if (out.id() != t.id()) {
    memo[out.id()].emplace_back(base, Entry{out, out});
    ++entries;
  }
  return out;
}

Process canon_thread_uncached(const Process& t, std::uint32_t base) {
  switch (t.kind()) {
    case Process::Kind::Replicate:
      return Process::replicate(canon(t.body(), base).to_process());
    case Process::Kind::Case: {
      std::map<Name, Name> r;
      std::uint32_t next = base;
      for (Name b : binding_names_ordered(t.pattern())) r.emplace(b, Name::canon(next++));
      Pattern p = rename_binders(t.pattern(), r);
      Process body = rename_free(t.body(), r);
      return Process::case_of(p, canon(body, next).to_process());
    }
    default:
      return t;
  }
}

// A thread printed once, with the restricted-name occurrences cut out so
// that it can be re-rendered under any naming without printing again.
struct Template {
  std::vector<std::string> pieces;  // occ.size() + 1 fragments
  std::vector<Name> occ;

  template <class F>
  void render(std::string& out, F&& text) const {
    out += pieces[0];
    for (std::size_t i = 0; i < occ.size(); ++i) {
      out += text(occ[i]);
      out += pieces[i + 1];
    }
  }
};

Template make_template(const Process& t, const NameSet& rset) {
  static constexpr char kMark = '\x01';
  Template tpl;
  PrintOptions hook;
  hook.name_text = [&](Name n) {
    if (!rset.count(n)) return n.text();
    tpl.occ.push_back(n);
    return std::string(1, kMark);
  };
  std::string flat = to_string(t, hook);
  std::size_t from = 0;
  for (std::size_t i = 0; i < tpl.occ.size(); ++i) {
    std::size_t at = flat.find(kMark, from);
    tpl.pieces.push_back(flat.substr(from, at - from));
    from = at + 1;
  }
  tpl.pieces.push_back(flat.substr(from));
  return tpl;
}

CanonicalForm canon(const Process& P, std::uint32_t base) {
  Flat flat = flatten(P);

  NameSet used;
  for (const auto& t : flat.threads) used.insert(t.free_names().begin(), t.free_names().end());
  std::vector<Name> restricted;
  for (Name n : flat.restricted)
    if (used.count(n)) restricted.push_back(n);
  const auto r = static_cast<std::uint32_t>(restricted.size());

  // Restricted names left over from an earlier canonical numbering may sit
  // where the binders are about to be numbered.
  std::map<Name, Name> clash;
  for (Name& n : restricted) {
    if (n.origin() == Name::Origin::Canon && n.payload() >= base + r) {
      Name m = Name::fresh();
      clash.emplace(n, m);
      n = m;
    }
  }
  const NameSet rset(restricted.begin(), restricted.end());

  std::vector<Process> threads;
  threads.reserve(flat.threads.size());
  for (const auto& t : flat.threads) threads.push_back(canon_thread(clash.empty() ? t : rename_free(t, clash), base + r));

  CanonicalForm out;
  if (r == 0) {
    std::vector<std::string> keys;
    for (const auto& t : threads) keys.push_back(to_string(t));
    std::vector<std::size_t> order(threads.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return keys[a] < keys[b]; });
    for (auto i : order) {
      out.threads.push_back(threads[i]);
      out.key += keys[i];
      out.key += '\n';
    }
    return out;
  }

  std::vector<Template> tpls;
  tpls.reserve(threads.size());
  for (const auto& t : threads) tpls.push_back(make_template(t, rset));

  // Colour refinement of restricted names: a name's colour is the multiset
  // of (thread signature, positions) over the threads it occurs in.
  std::map<Name, std::size_t> colour;
  for (Name n : restricted) colour[n] = 0;
  std::vector<std::string> sig(threads.size());
  auto compute_sigs = [&] {
    for (std::size_t i = 0; i < threads.size(); ++i) {
      std::map<Name, std::size_t> local;
      sig[i].clear();
      tpls[i].render(sig[i], [&](Name n) {
        auto [it, fresh] = local.emplace(n, local.size());
        (void)fresh;
        return "*" + std::to_string(colour[n]) + "." + std::to_string(it->second);
      });
    }
  };
  std::size_t distinct = 1;
  for (std::uint32_t round = 0; round <= r; ++round) {
    compute_sigs();
    std::map<Name, std::vector<std::string>> evidence;
    for (std::size_t i = 0; i < threads.size(); ++i)
      for (std::size_t k = 0; k < tpls[i].occ.size(); ++k)
        evidence[tpls[i].occ[k]].push_back(sig[i] + "@" + std::to_string(k));
    std::map<std::string, std::size_t> ids;
    std::map<Name, std::string> text;
    for (auto& [n, ev] : evidence) {
      std::sort(ev.begin(), ev.end());
      std::string t = std::to_string(colour[n]);
      for (const auto& e : ev) t += "|" + e;
      text[n] = t;
      ids.emplace(t, 0);
    }
    std::size_t next = 0;
    for (auto& [t, id] : ids) id = next++;
    for (auto& [n, t] : text) colour[n] = ids[t];
    if (ids.size() == distinct) break;
    distinct = ids.size();
  }
  compute_sigs();

  std::vector<std::size_t> order(threads.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return sig[a] < sig[b]; });

  // Threads whose restricted names occur nowhere else are interchangeable
  // with any thread of the same signature.
  std::map<Name, std::size_t> occurrences;
  for (const auto& t : tpls) {
    NameSet seen(t.occ.begin(), t.occ.end());
    for (Name n : seen) ++occurrences[n];
  }
  auto is_private = [&](std::size_t i) {
    return std::all_of(tpls[i].occ.begin(), tpls[i].occ.end(), [&](Name n) { return occurrences[n] == 1; });
  };

  std::vector<std::pair<std::size_t, std::size_t>> groups;  // [begin, end) in order
  std::size_t combos = 1;
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i + 1;
    while (j < order.size() && sig[order[j]] == sig[order[i]]) ++j;
    bool needs_search = false;
    for (std::size_t k = i; k < j && !needs_search; ++k)
      needs_search = !tpls[order[k]].occ.empty() && !is_private(order[k]);
    // Literally identical threads gain nothing from reordering.
    if (needs_search) {
      auto same_as_first = [&](std::size_t k) { return tpls[order[k]].occ == tpls[order[i]].occ; };
      bool all_same = true;
      for (std::size_t k = i + 1; k < j && all_same; ++k) all_same = same_as_first(k);
      needs_search = !all_same;
    }
    if (j - i > 1 && needs_search) {
      groups.emplace_back(i, j);
      for (std::size_t k = 2; k <= j - i && combos <= kMaxTieOrders; ++k) combos *= k;
    }
    i = j;
  }
  if (combos > kMaxTieOrders) groups.clear();

  auto numbering_for = [&](const std::vector<std::size_t>& ord) {
    std::map<Name, std::string> num;
    for (auto i : ord)
      for (Name n : tpls[i].occ)
        if (!num.count(n)) num.emplace(n, Name::canon(base + static_cast<std::uint32_t>(num.size())).text());
    return num;
  };
  auto key_for = [&](const std::vector<std::size_t>& ord, const std::map<Name, std::string>& num) {
    std::string k;
    for (auto i : ord) {
      tpls[i].render(k, [&](Name n) -> const std::string& { return num.at(n); });
      k += '\n';
    }
    return k;
  };

  std::vector<std::size_t> best = order;
  auto best_num = numbering_for(order);
  std::string best_key = key_for(order, best_num);

  std::vector<std::size_t> cur = order;
  std::function<void(std::size_t)> search = [&](std::size_t g) {
    if (g == groups.size()) {
      auto num = numbering_for(cur);
      auto k = key_for(cur, num);
      if (k < best_key) {
        best_key = std::move(k);
        best = cur;
        best_num = std::move(num);
      }
      return;
    }
    auto [b, e] = groups[g];
    std::sort(cur.begin() + static_cast<std::ptrdiff_t>(b), cur.begin() + static_cast<std::ptrdiff_t>(e));
    do {
      search(g + 1);
    } while (std::next_permutation(cur.begin() + static_cast<std::ptrdiff_t>(b),
                                   cur.begin() + static_cast<std::ptrdiff_t>(e)));
  };
  if (!groups.empty()) search(0);

  std::map<Name, Name> renaming;
  std::uint32_t k = 0;
  for (auto i : best)
    for (Name n : tpls[i].occ)
      if (!renaming.count(n)) renaming.emplace(n, Name::canon(base + k++));
  std::erase_if(renaming, [](const auto& kv) { return kv.first == kv.second; });
  for (std::uint32_t j = 0; j < r; ++j) out.restricted.push_back(Name::canon(base + j));
  for (auto i : best) out.threads.push_back(rename_free(threads[i], renaming));
  out.key = "nu" + std::to_string(r) + ":" + best_key;
  return out;
}

}  // namespace

Flat flatten(const Process& P) {
  Flat out;
  Flattener f{P.free_names(), {}, {}};
  f.run(P, {});
  return std::move(f.out);
}

CanonicalForm canonicalize(const Process& P) {
  std::uint32_t base = 0;
  for (Name n : P.free_names())
    if (n.origin() == Name::Origin::Canon) base = std::max(base, static_cast<std::uint32_t>(n.payload()) + 1);
  return canon(P, base);
}

std::string canonical_key(const Process& P) { return canonicalize(P).key; }

bool struct_eq(const Process& P, const Process& Q) {
  if (P.free_names() != Q.free_names()) return false;
  return canonical_key(P) == canonical_key(Q);
}

}  // namespace cpc
