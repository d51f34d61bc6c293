#include "hmvol/group_enum.hpp"

#include <array>
#include <atomic>
#include <cstdlib>
#include <thread>

namespace hmvol {

std::string to_string(Lattice lattice) { return lattice == Lattice::L ? "L" : "M"; }
std::string to_string(GroupKind group) { return group == GroupKind::U ? "U" : "SU"; }

std::vector<std::int64_t> lattice_form(Lattice lattice, int n) {
  if (n < 1) throw ContractError("lattice_form: n must be >= 1");
  std::vector<std::int64_t> form(static_cast<std::size_t>(n) + 1, 1);
  form.back() = lattice == Lattice::L ? -1 : -2;
  return form;
}

std::uint64_t budget_from_env() {
  if (const char* env = std::getenv("HMVOL_BUDGET")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  return kDefaultBudget;
}

BudgetExceeded::BudgetExceeded(std::uint64_t budget)
    : std::runtime_error("enumeration budget of " + std::to_string(budget) + " nodes exceeded"), budget_(budget) {}

namespace {

constexpr std::size_t kMaxDim = 3;
using Row = std::array<RingElement, kMaxDim>;

struct Tally {
  std::uint64_t unitary = 0;
  std::uint64_t special = 0;
};

struct Context {
  Context(const ResidueRing& r, const std::vector<std::int64_t>& f, std::uint64_t b) : ring(r), form(f), budget(b) {}

  const ResidueRing& ring;
  std::vector<std::int64_t> form;
  std::uint64_t budget;
  std::size_t k = 0;
  std::array<std::uint32_t, kMaxDim> form_mod{};
  std::array<std::vector<RingElement>, kMaxDim * kMaxDim> allowed;
  // bucket[i][v]: entries x allowed in (i, k-1) with form[k-1] * N(x) = v.
  std::array<std::vector<std::vector<RingElement>>, kMaxDim> bucket;
  std::atomic<std::uint64_t> nodes{0};
  std::atomic<bool> abort{false};

  const std::vector<RingElement>& allowed_at(std::size_t i, std::size_t j) const { return allowed[i * kMaxDim + j]; }
};

class NodeMeter {
 public:
  explicit NodeMeter(Context& ctx) : ctx_(ctx) {}
  NodeMeter(const NodeMeter&) = delete;
  NodeMeter& operator=(const NodeMeter&) = delete;
  ~NodeMeter() { flush(); }

  // False once the shared budget is exhausted.
  bool tick() {
    if (++local_ >= kFlushEvery) return flush();
    return true;
  }
  bool flush() {
    const std::uint64_t total = ctx_.nodes.fetch_add(local_, std::memory_order_relaxed) + local_;
    local_ = 0;
    if (total > ctx_.budget) ctx_.abort.store(true, std::memory_order_relaxed);
    return !ctx_.abort.load(std::memory_order_relaxed);
  }
  bool ok() const { return !ctx_.abort.load(std::memory_order_relaxed); }

 private:
  static constexpr std::uint64_t kFlushEvery = 4096;
  Context& ctx_;
  std::uint64_t local_ = 0;
};

void prepare(Context& ctx, std::size_t k, std::optional<unsigned> identity_level) {
  const ResidueRing& ring = ctx.ring;
  ctx.k = k;
  for (std::size_t j = 0; j < k; ++j) ctx.form_mod[j] = ring.reduce(ctx.form[j]);
  if (identity_level && *identity_level > ring.spec().N) {
    throw ContractError("identity level exceeds the ring level");
  }
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      auto& list = ctx.allowed[i * kMaxDim + j];
      list.clear();
      for (std::size_t e = 0; e < ring.size(); ++e) {
        const RingElement x = ring.element(e);
        if (identity_level && !ring.congruent(x, i == j ? 1U : 0U, *identity_level)) continue;
        list.push_back(x);
      }
    }
    auto& b = ctx.bucket[i];
    b.assign(ring.modulus(), {});
    for (const RingElement& x : ctx.allowed_at(i, k - 1)) {
      const std::uint64_t v = static_cast<std::uint64_t>(ctx.form_mod[k - 1]) * ring.norm(x) % ring.modulus();
      b[v].push_back(x);
    }
  }
}

std::uint32_t self_pairing(const Context& ctx, const Row& x, std::size_t upto) {
  const ResidueRing& ring = ctx.ring;
  std::uint64_t s = 0;
  for (std::size_t j = 0; j < upto; ++j) s += static_cast<std::uint64_t>(ctx.form_mod[j]) * ring.norm(x[j]);
  return static_cast<std::uint32_t>(s % ring.modulus());
}

bool allowed_entry(const Context& ctx, std::size_t i, std::size_t j, RingElement x, std::optional<unsigned> level) {
  return !level || ctx.ring.congruent(x, i == j ? 1U : 0U, *level);
}

// Iterates over the cartesian product of allowed entries in the given columns
// of row i, writing them into x before each call of body. Stops early when
// body returns false.
template <class Body>
void odometer(const Context& ctx, std::size_t i, const std::array<std::size_t, kMaxDim>& cols, std::size_t ncols,
              Row& x, Body&& body) {
  std::array<std::size_t, kMaxDim> idx{};
  for (std::size_t t = 0; t < ncols; ++t) {
    if (ctx.allowed_at(i, cols[t]).empty()) return;
    x[cols[t]] = ctx.allowed_at(i, cols[t])[0];
  }
  while (true) {
    if (!body()) return;
    std::size_t t = 0;
    for (; t < ncols; ++t) {
      const auto& list = ctx.allowed_at(i, cols[t]);
      if (++idx[t] < list.size()) {
        x[cols[t]] = list[idx[t]];
        break;
      }
      idx[t] = 0;
      x[cols[t]] = list[0];
    }
    if (t == ncols) return;
  }
}

// Calls emit(row) for every admissible row i given rows[0..i-1]: correct
// self-pairing form[i] and orthogonal to all earlier rows.
template <class Emit>
void for_each_row(Context& ctx, std::size_t i, const Row* rows, NodeMeter& meter, std::optional<unsigned> level,
                  Emit&& emit) {
  const ResidueRing& ring = ctx.ring;
  const std::size_t k = ctx.k;
  const std::uint32_t target_self = ctx.form_mod[i];

  // Pairing coefficients: <x, rows[t]> = sum_j x_j * c[t][j].
  std::array<std::array<RingElement, kMaxDim>, kMaxDim> c{};
  for (std::size_t t = 0; t < i; ++t) {
    for (std::size_t j = 0; j < k; ++j) c[t][j] = ring.scale(ring.conj(rows[t][j]), ctx.form[j]);
  }
  auto orthogonal = [&](const Row& x) {
    for (std::size_t t = 0; t < i; ++t) {
      RingElement s = ring.zero();
      for (std::size_t j = 0; j < k; ++j) s = ring.add(s, ring.mul(x[j], c[t][j]));
      if (s != ring.zero()) return false;
    }
    return true;
  };

  // Pivot columns: an i x i minor of c with unit determinant lets the pivot
  // entries be solved from the free ones.
  std::array<std::size_t, kMaxDim> pivots{}, free_cols{};
  bool have_pivots = false;
  RingElement minor_inv{};
  if (i == 1) {
    for (std::size_t p = k; p-- > 0;) {
      if (ring.is_unit(c[0][p])) {
        pivots[0] = p;
        minor_inv = ring.inverse(c[0][p]);
        have_pivots = true;
        break;
      }
    }
  } else if (i == 2) {
    for (std::size_t p1 = 0; p1 < k && !have_pivots; ++p1) {
      for (std::size_t p2 = p1 + 1; p2 < k && !have_pivots; ++p2) {
        const RingElement m = ring.sub(ring.mul(c[0][p1], c[1][p2]), ring.mul(c[0][p2], c[1][p1]));
        if (ring.is_unit(m)) {
          pivots[0] = p1;
          pivots[1] = p2;
          minor_inv = ring.inverse(m);
          have_pivots = true;
        }
      }
    }
  }

  Row x{};
  if (have_pivots) {
    std::size_t nfree = 0;
    for (std::size_t j = 0; j < k; ++j) {
      bool is_pivot = false;
      for (std::size_t t = 0; t < i; ++t) is_pivot = is_pivot || pivots[t] == j;
      if (!is_pivot) free_cols[nfree++] = j;
    }
    odometer(ctx, i, free_cols, nfree, x, [&]() {
      if (!meter.tick()) return false;
      // rhs[t] = -sum_{free j} x_j c[t][j]
      std::array<RingElement, kMaxDim> rhs{};
      for (std::size_t t = 0; t < i; ++t) {
        RingElement s = ring.zero();
        for (std::size_t f = 0; f < nfree; ++f) s = ring.add(s, ring.mul(x[free_cols[f]], c[t][free_cols[f]]));
        rhs[t] = ring.neg(s);
      }
      if (i == 1) {
        x[pivots[0]] = ring.mul(rhs[0], minor_inv);
      } else {
        const std::size_t p1 = pivots[0], p2 = pivots[1];
        x[p1] = ring.mul(ring.sub(ring.mul(c[1][p2], rhs[0]), ring.mul(c[0][p2], rhs[1])), minor_inv);
        x[p2] = ring.mul(ring.sub(ring.mul(c[0][p1], rhs[1]), ring.mul(c[1][p1], rhs[0])), minor_inv);
      }
      for (std::size_t t = 0; t < i; ++t) {
        if (!allowed_entry(ctx, i, pivots[t], x[pivots[t]], level)) return true;
      }
      if (self_pairing(ctx, x, k) != target_self) return true;
      emit(x);
      return meter.ok();
    });
    return;
  }

  // No usable pivot: enumerate the leading entries and take the last one from
  // the bucket matching the remaining self-pairing.
  std::array<std::size_t, kMaxDim> lead{};
  for (std::size_t j = 0; j + 1 < k; ++j) lead[j] = j;
  const std::uint32_t q = ring.modulus();
  odometer(ctx, i, lead, k - 1, x, [&]() {
    if (!meter.tick()) return false;
    const std::uint32_t partial = self_pairing(ctx, x, k - 1);
    const std::uint32_t need = (target_self + q - partial) % q;
    for (const RingElement& y : ctx.bucket[i][need]) {
      if (!meter.tick()) return false;
      x[k - 1] = y;
      if (orthogonal(x)) emit(x);
    }
    return meter.ok();
  });
}

void descend(Context& ctx, std::size_t i, std::array<Row, kMaxDim>& rows, NodeMeter& meter,
             std::optional<unsigned> level, Tally& out) {
  const ResidueRing& ring = ctx.ring;
  for_each_row(ctx, i, rows.data(), meter, level, [&](const Row& x) {
    rows[i] = x;
    if (i + 1 < ctx.k) {
      descend(ctx, i + 1, rows, meter, level, out);
      return;
    }
    ++out.unitary;
    std::array<RingElement, kMaxDim * kMaxDim> flat{};
    for (std::size_t r = 0; r < ctx.k; ++r) {
      for (std::size_t col = 0; col < ctx.k; ++col) flat[r * ctx.k + col] = rows[r][col];
    }
    if (det(ring, std::span<const RingElement>(flat.data(), ctx.k * ctx.k), ctx.k) == ring.one()) ++out.special;
  });
}

Tally run_backtrack(Context& ctx, std::optional<unsigned> level, unsigned threads) {
  std::vector<Row> first;
  {
    NodeMeter meter(ctx);
    for_each_row(ctx, 0, nullptr, meter, level, [&](const Row& x) { first.push_back(x); });
  }
  if (ctx.abort.load()) return {};

  std::vector<Tally> per(first.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    NodeMeter meter(ctx);
    std::array<Row, kMaxDim> rows{};
    while (true) {
      const std::size_t id = next.fetch_add(1);
      if (id >= first.size() || !meter.ok()) break;
      rows[0] = first[id];
      descend(ctx, 1, rows, meter, level, per[id]);
    }
  };
  if (threads <= 1 || first.size() < 2) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  // Reduction in first-row order.
  Tally total;
  for (const Tally& t : per) {
    total.unitary += t.unitary;
    total.special += t.special;
  }
  return total;
}

// Every matrix with allowed entries, checked through the generic matrix routines.
Tally run_cartesian(Context& ctx) {
  const ResidueRing& ring = ctx.ring;
  const std::size_t k = ctx.k;
  NodeMeter meter(ctx);
  RingMatrix a(k, k);
  std::vector<std::size_t> idx(k * k, 0);
  for (std::size_t e = 0; e < k * k; ++e) {
    if (ctx.allowed_at(e / k, e % k).empty()) return {};
    a.data[e] = ctx.allowed_at(e / k, e % k)[0];
  }
  Tally out;
  while (true) {
    if (!meter.tick()) return out;
    if (hermitian_defect(ring, a, ctx.form).is_zero()) {
      ++out.unitary;
      if (det(ring, a) == ring.one()) ++out.special;
    }
    std::size_t e = 0;
    for (; e < k * k; ++e) {
      const auto& list = ctx.allowed_at(e / k, e % k);
      if (++idx[e] < list.size()) {
        a.data[e] = list[idx[e]];
        break;
      }
      idx[e] = 0;
      a.data[e] = list[0];
    }
    if (e == k * k) return out;
  }
}

BigInt to_big(std::uint64_t v) {
  BigInt out;
  mpz_import(out.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
  return out;
}

}  // namespace

GroupCounts count_form(const std::vector<std::int64_t>& form, const ResidueRingSpec& spec, const EnumOptions& opts,
                       std::uint64_t* nodes_out) {
  if (form.size() < 2 || form.size() > kMaxDim) throw ContractError("count_group: supported dimensions are n = 1, 2");
  const ResidueRing ring(spec);
  Context ctx(ring, form, opts.budget);
  prepare(ctx, form.size(), opts.identity_level);
  unsigned threads = opts.threads;
  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());

  const Tally t = opts.mode == EnumMode::Cartesian ? run_cartesian(ctx)
                                                    : run_backtrack(ctx, opts.identity_level, threads);
  if (ctx.abort.load()) throw BudgetExceeded(opts.budget);
  if (nodes_out != nullptr) *nodes_out = ctx.nodes.load();
  return {to_big(t.unitary), to_big(t.special)};
}

GroupCounts count_unitary_and_special(Lattice lattice, int n, const ResidueRingSpec& spec, const EnumOptions& opts,
                                      std::uint64_t* nodes_out) {
  if (n < 1 || n > 2) throw ContractError("count_group: supported dimensions are n = 1, 2");
  return count_form(lattice_form(lattice, n), spec, opts, nodes_out);
}

CountReport count_group(Lattice lattice, int n, const ResidueRingSpec& spec, GroupKind group,
                        const EnumOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  CountReport report;
  report.spec = spec;
  report.lattice = lattice;
  report.n = n;
  report.group = group;
  report.mode = opts.mode;
  report.identity_level = opts.identity_level;
  const GroupCounts counts = count_unitary_and_special(lattice, n, spec, opts, &report.nodes);
  report.count = group == GroupKind::U ? counts.unitary : counts.special;
  report.elapsed = std::chrono::steady_clock::now() - start;
  return report;
}

BigInt count_kernel(Lattice lattice, int n, KernelLevel level, const FieldData& field) {
  const auto form = lattice_form(lattice, n);
  const ResidueRing ring(make_ring_spec(field, 2, level == KernelLevel::ModTwo ? 1 : 2));
  const std::size_t k = form.size();
  const std::size_t size = ring.size();

  // (B form + form conj(B)^T)_{ij} = b_ij form_j + form_i conj(b_ji)
  auto entry_ok = [&](RingElement bij, RingElement bji, std::size_t i, std::size_t j) {
    return ring.add(ring.scale(bij, form[j]), ring.scale(ring.conj(bji), form[i])) == ring.zero();
  };

  BigInt total = 1;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      std::uint64_t pairs = 0;
      for (std::size_t x = 0; x < size; ++x) {
        for (std::size_t y = 0; y < size; ++y) pairs += entry_ok(ring.element(x), ring.element(y), i, j) ? 1 : 0;
      }
      total *= to_big(pairs);
    }
  }
  // Diagonal entries, coupled only through Tr B = 0: convolve the
  // distribution of partial traces.
  std::vector<BigInt> dist(size, 0);
  dist[ring.index(ring.zero())] = 1;
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<RingElement> diag;
    for (std::size_t x = 0; x < size; ++x) {
      if (entry_ok(ring.element(x), ring.element(x), i, i)) diag.push_back(ring.element(x));
    }
    std::vector<BigInt> next(size, 0);
    for (std::size_t s = 0; s < size; ++s) {
      if (dist[s] == 0) continue;
      for (const RingElement& x : diag) next[ring.index(ring.add(ring.element(s), x))] += dist[s];
    }
    dist = std::move(next);
  }
  return total * dist[ring.index(ring.zero())];
}

BigInt count_kernel(Lattice lattice, int n, KernelLevel level) {
  return count_kernel(lattice, n, level, make_field(1));
}

OracleLevels default_oracle_levels(std::uint32_t p) { return p == 2 ? OracleLevels{3, 2} : OracleLevels{1, 1}; }

OracleTauReport oracle_tau_p_report(Lattice lattice, int n, const FieldData& field, std::uint32_t p,
                                    const EnumOptions& opts, std::optional<OracleLevels> levels) {
  const OracleLevels lv = levels.value_or(default_oracle_levels(p));
  if (lv.image_level < 1 || lv.image_level > lv.count_level) {
    throw ContractError("oracle_tau_p: need 1 <= image level <= count level");
  }
  const ResidueRingSpec spec = make_ring_spec(field, p, lv.count_level);
  OracleTauReport report;
  report.levels = lv;

  EnumOptions group_opts = opts;
  group_opts.identity_level.reset();
  std::uint64_t nodes = 0;
  report.group_count = count_unitary_and_special(lattice, n, spec, group_opts, &nodes).special;
  report.nodes += nodes;
  if (lv.image_level == lv.count_level) {
    report.kernel_count = 1;
  } else {
    EnumOptions kernel_opts = opts;
    kernel_opts.identity_level = lv.image_level;
    report.kernel_count = count_unitary_and_special(lattice, n, spec, kernel_opts, &nodes).special;
    report.nodes += nodes;
  }
  const long dim = static_cast<long>((n + 1) * (n + 1) - 1);
  const Rational scale = Rational(static_cast<long>(p)).pow(static_cast<long>(lv.image_level) * dim);
  report.value = Rational(report.group_count) / (Rational(report.kernel_count) * scale);
  return report;
}

Rational oracle_tau_p(Lattice lattice, int n, const FieldData& field, std::uint32_t p, const EnumOptions& opts) {
  return oracle_tau_p_report(lattice, n, field, p, opts).value;
}

StabilizationReport stabilization_report(Lattice lattice, int n, const FieldData& field, std::uint32_t p, unsigned N,
                                         const EnumOptions& opts) {
  if (N < 1) throw ContractError("stabilization_check: N must be >= 1");
  StabilizationReport r;
  r.lower = count_group(lattice, n, make_ring_spec(field, p, N), GroupKind::U, opts).count;
  r.upper = count_group(lattice, n, make_ring_spec(field, p, N + 1), GroupKind::U, opts).count;
  mpz_ui_pow_ui(r.factor.get_mpz_t(), p, static_cast<unsigned long>((n + 1) * (n + 1)));
  r.stable = r.upper == r.factor * r.lower;
  return r;
}

bool stabilization_check(Lattice lattice, int n, const FieldData& field, std::uint32_t p, unsigned N,
                         const EnumOptions& opts) {
  return stabilization_report(lattice, n, field, p, N, opts).stable;
}

}  // namespace hmvol
