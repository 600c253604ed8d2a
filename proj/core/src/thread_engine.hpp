#pragma once

#include <utility>
#include <vector>

#include "cpc/name.hpp"

namespace cpc::detail {

// One-step reductions for calculi whose terms flatten into restricted names
// plus a parallel bag of threads, with !P ≡ P | !P. `Ops` supplies:
//
//   FlatBag<Proc> flatten(const Proc&)         restricted names renamed fresh
//   const Proc* replicated(const Proc&)        body if the thread is !body
//   void unary(const Proc&, Emit)              emit(threads) for each step of one thread
//   void binary(const Proc&, const Proc&, Emit) called in both orders
//
// Results come back as (restricted names, threads) pairs; the caller rebuilds
// and deduplicates them.
template <class Proc>
struct FlatBag {
  std::vector<Name> restricted;
  std::vector<Proc> threads;
};

template <class Proc, class Ops>
class ThreadEngine {
 public:
  explicit ThreadEngine(const Ops& ops) : ops_(ops) {}

  std::vector<FlatBag<Proc>> step(const Proc& P) const {
    FlatBag<Proc> flat = ops_.flatten(P);
    std::vector<FlatBag<Proc>> out;
    among(flat.restricted, flat.threads, {}, out);
    return out;
  }

 private:
  struct Exposure {
    std::vector<Name> restricted;
    Proc thread;
    std::vector<Proc> residual;
  };

  std::vector<Exposure> copy_exposures(const Proc& body) const {
    FlatBag<Proc> copy = ops_.flatten(body);
    std::vector<Exposure> out;
    for (std::size_t i = 0; i < copy.threads.size(); ++i) {
      for (auto& e : exposures(copy.threads[i])) {
        Exposure x{copy.restricted, e.thread, {}};
        x.restricted.insert(x.restricted.end(), e.restricted.begin(), e.restricted.end());
        for (std::size_t j = 0; j < copy.threads.size(); ++j)
          if (j != i) x.residual.push_back(copy.threads[j]);
        x.residual.insert(x.residual.end(), e.residual.begin(), e.residual.end());
        out.push_back(std::move(x));
      }
    }
    return out;
  }

  std::vector<Exposure> exposures(const Proc& t) const {
    const Proc* body = ops_.replicated(t);
    if (!body) return {Exposure{{}, t, {}}};
    auto out = copy_exposures(*body);
    for (auto& e : out) e.residual.push_back(t);
    return out;
  }

  static void emit(const std::vector<Name>& restricted, const std::vector<Proc>& made,
                   const std::vector<const std::vector<Proc>*>& keep, std::vector<FlatBag<Proc>>& out) {
    FlatBag<Proc> bag{restricted, made};
    for (const auto* v : keep) bag.threads.insert(bag.threads.end(), v->begin(), v->end());
    out.push_back(std::move(bag));
  }

  void among(const std::vector<Name>& restricted, const std::vector<Proc>& threads, const std::vector<Proc>& rest,
             std::vector<FlatBag<Proc>>& out) const {
    std::vector<std::vector<Exposure>> exp;
    exp.reserve(threads.size());
    for (const auto& t : threads) exp.push_back(exposures(t));

    auto others_except = [&](std::size_t i, std::size_t j) {
      std::vector<Proc> o = rest;
      for (std::size_t k = 0; k < threads.size(); ++k)
        if (k != i && k != j) o.push_back(threads[k]);
      return o;
    };
    auto join = [&](const std::vector<Name>& a, const std::vector<Name>& b) {
      std::vector<Name> r = restricted;
      r.insert(r.end(), a.begin(), a.end());
      r.insert(r.end(), b.begin(), b.end());
      return r;
    };

    for (std::size_t i = 0; i < threads.size(); ++i) {
      auto others = others_except(i, i);
      for (const auto& e : exp[i])
        ops_.unary(e.thread, [&](const std::vector<Proc>& made) {
          emit(join(e.restricted, {}), made, {&e.residual, &others}, out);
        });
    }
    for (std::size_t i = 0; i < threads.size(); ++i) {
      for (std::size_t j = i + 1; j < threads.size(); ++j) {
        auto others = others_except(i, j);
        for (const auto& a : exp[i])
          for (const auto& b : exp[j]) pair(a, b, join(a.restricted, b.restricted), others, out);
      }
    }
    // Two copies of one replicated thread, or two threads of one copy.
    for (std::size_t i = 0; i < threads.size(); ++i) {
      const Proc* body = ops_.replicated(threads[i]);
      if (!body) continue;
      auto with_rep = others_except(i, i);
      with_rep.push_back(threads[i]);
      auto first = copy_exposures(*body);
      auto second = copy_exposures(*body);
      for (std::size_t a = 0; a < first.size(); ++a)
        for (std::size_t b = a; b < second.size(); ++b)
          pair(first[a], second[b], join(first[a].restricted, second[b].restricted), with_rep, out);
      FlatBag<Proc> copy = ops_.flatten(*body);
      std::vector<FlatBag<Proc>> inner;
      among(copy.restricted, copy.threads, with_rep, inner);
      for (auto& bag : inner) {
        bag.restricted.insert(bag.restricted.begin(), restricted.begin(), restricted.end());
        out.push_back(std::move(bag));
      }
    }
  }

  void pair(const Exposure& a, const Exposure& b, const std::vector<Name>& restricted, const std::vector<Proc>& others,
            std::vector<FlatBag<Proc>>& out) const {
    auto sink = [&](const std::vector<Proc>& made) { emit(restricted, made, {&a.residual, &b.residual, &others}, out); };
    ops_.binary(a.thread, b.thread, sink);
    ops_.binary(b.thread, a.thread, sink);
  }

  const Ops& ops_;
};

}  // namespace cpc::detail
