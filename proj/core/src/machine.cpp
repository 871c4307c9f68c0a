// SPDX-License-Identifier: Apache-2.0
#include "prw/machine.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

#include "prw/codec.hpp"

namespace prw::machine {

// ---------------------------------------------------------------------------
// terms

namespace {

TermPtr mk(Tk k, Nat n = 0, Nat n2 = 0, TermPtr a = nullptr, TermPtr b = nullptr) {
  auto t = std::make_shared<MTerm>();
  t->k = k;
  t->num = std::move(n);
  t->num2 = std::move(n2);
  t->a = std::move(a);
  t->b = std::move(b);
  return t;
}

constexpr int kTagBits = 5;
constexpr int kMaxTag = int(Tk::DivergeT);

bool has_subterms(Tk k) {
  switch (k) {
    case Tk::App: case Tk::PairC: case Tk::SmnP:
    case Tk::QAddC: case Tk::QLtC: case Tk::ZAddC: case Tk::ZLtC:
    case Tk::OracleQ: case Tk::Fst: case Tk::Snd:
    case Tk::Succ: case Tk::Pred: case Tk::IsZero:
      return true;
    default:
      return false;
  }
}

bool is_binary(Tk k) {
  switch (k) {
    case Tk::App: case Tk::PairC: case Tk::SmnP:
    case Tk::QAddC: case Tk::QLtC: case Tk::ZAddC: case Tk::ZLtC:
      return true;
    default:
      return false;
  }
}

using Bits = std::vector<uint8_t>;

void emit_bits(Bits& out, unsigned long v, int width) {
  for (int i = width - 1; i >= 0; --i) out.push_back((v >> i) & 1u);
}

size_t nat_bitlen(const Nat& n) {
  if (n == 0) return 0;
  return mpz_sizeinbase(n.get_mpz_t(), 2);
}

// positive integer, gamma style: (bits(v)-1) zeros then the bits of v
void emit_gamma_pos(Bits& out, size_t v) {
  size_t len = 0;
  for (size_t w = v; w > 0; w >>= 1) ++len;
  for (size_t i = 0; i + 1 < len; ++i) out.push_back(0);
  for (size_t i = len; i-- > 0;) out.push_back((v >> i) & 1u);
}

// payload number n: gamma(bitlen(n) + 1), then the bits of n below its
// leading one. The tail of a payload is thus exactly the bit stream of n
// with its leading 1 stripped, which lets value forcing splice sub-streams.
void emit_number(Bits& out, const Nat& n) {
  size_t len = nat_bitlen(n);
  emit_gamma_pos(out, len + 1);
  if (len <= 1) return;
  for (size_t i = len - 1; i-- > 0;)
    out.push_back(mpz_tstbit(n.get_mpz_t(), i) ? 1 : 0);
}

void ser(const MTerm& t, Bits& out) {
  emit_bits(out, static_cast<unsigned long>(t.k), kTagBits);
  switch (t.k) {
    case Tk::Num: case Tk::STpl1: case Tk::CompTpl1:
      emit_number(out, t.num);
      break;
    case Tk::STpl2: case Tk::CompTpl2:
      emit_number(out, t.num);
      emit_number(out, t.num2);
      break;
    default:
      if (is_binary(t.k)) {
        ser(*t.a, out);
        ser(*t.b, out);
      } else if (has_subterms(t.k)) {
        ser(*t.a, out);
      }
      break;
  }
}

Nat bits_to_nat(const Bits& bits) {
  size_t nbytes = (bits.size() + 7) / 8;
  Bits bytes(nbytes, 0);
  size_t pad = nbytes * 8 - bits.size();
  for (size_t i = 0; i < bits.size(); ++i) {
    size_t pos = pad + i;
    if (bits[i]) bytes[pos / 8] |= uint8_t(0x80u >> (pos % 8));
  }
  Nat out;
  mpz_import(out.get_mpz_t(), bytes.size(), 1, 1, 0, 0, bytes.data());
  return out;
}

struct BitReader {
  const Nat& n;
  size_t total;   // bit length
  size_t pos = 1; // skip the leading 1

  explicit BitReader(const Nat& v) : n(v), total(mpz_sizeinbase(v.get_mpz_t(), 2)) {}
  bool eof() const { return pos >= total; }
  int next() {
    if (eof()) return -1;
    int b = mpz_tstbit(n.get_mpz_t(), total - 1 - pos) ? 1 : 0;
    ++pos;
    return b;
  }
};

bool read_number(BitReader& r, Nat& out) {
  size_t zeros = 0;
  int b;
  while ((b = r.next()) == 0) ++zeros;
  if (b < 0) return false;
  if (zeros > 58) return false;
  size_t lp1 = 1;  // bitlen(n) + 1, gamma coded
  for (size_t i = 0; i < zeros; ++i) {
    b = r.next();
    if (b < 0) return false;
    lp1 = (lp1 << 1) | size_t(b);
  }
  size_t len = lp1 - 1;
  if (len == 0) {
    out = 0;
    return true;
  }
  if (r.pos + (len - 1) > r.total) return false;
  // the payload is a contiguous bit range of the code; extract it wholesale
  size_t lo_bit = r.total - (r.pos + len - 1);
  Nat chunk;
  mpz_fdiv_q_2exp(chunk.get_mpz_t(), r.n.get_mpz_t(), lo_bit);
  mpz_fdiv_r_2exp(chunk.get_mpz_t(), chunk.get_mpz_t(), len - 1);
  r.pos += len - 1;
  Nat m = 1;
  m <<= (len - 1);
  out = m + chunk;
  return true;
}

TermPtr parse_term(BitReader& r, int depth) {
  if (depth > 100000) return nullptr;
  unsigned long tag = 0;
  for (int i = 0; i < kTagBits; ++i) {
    int b = r.next();
    if (b < 0) return nullptr;
    tag = (tag << 1) | unsigned(b);
  }
  if (tag > static_cast<unsigned long>(kMaxTag)) return nullptr;
  Tk k = static_cast<Tk>(tag);
  switch (k) {
    case Tk::Num: case Tk::STpl1: case Tk::CompTpl1: {
      Nat n;
      if (!read_number(r, n)) return nullptr;
      return mk(k, n);
    }
    case Tk::STpl2: case Tk::CompTpl2: {
      Nat n, n2;
      if (!read_number(r, n) || !read_number(r, n2)) return nullptr;
      return mk(k, n, n2);
    }
    default:
      if (is_binary(k)) {
        TermPtr a = parse_term(r, depth + 1);
        if (!a) return nullptr;
        TermPtr b = parse_term(r, depth + 1);
        if (!b) return nullptr;
        return mk(k, 0, 0, a, b);
      }
      if (has_subterms(k)) {
        TermPtr a = parse_term(r, depth + 1);
        if (!a) return nullptr;
        return mk(k, 0, 0, a);
      }
      return mk(k);
  }
}

std::mutex g_decode_mu;
std::map<Nat, TermPtr>& decode_cache() {
  static std::map<Nat, TermPtr> c;
  return c;
}
constexpr size_t kDecodeCacheBitCap = 4096;

const TermPtr& diverge_term() {
  static TermPtr t = mk(Tk::DivergeT);
  return t;
}

}  // namespace

TermPtr t_var() { return mk(Tk::Var); }
TermPtr t_num(const Nat& n) { return mk(Tk::Num, n); }
TermPtr t_app(TermPtr f, TermPtr g) { return mk(Tk::App, 0, 0, std::move(f), std::move(g)); }
TermPtr t_oracle(TermPtr t) { return mk(Tk::OracleQ, 0, 0, std::move(t)); }
TermPtr t_pair(TermPtr s, TermPtr t) { return mk(Tk::PairC, 0, 0, std::move(s), std::move(t)); }
TermPtr t_fst(TermPtr t) { return mk(Tk::Fst, 0, 0, std::move(t)); }
TermPtr t_snd(TermPtr t) { return mk(Tk::Snd, 0, 0, std::move(t)); }
TermPtr t_succ(TermPtr t) { return mk(Tk::Succ, 0, 0, std::move(t)); }
TermPtr t_pred(TermPtr t) { return mk(Tk::Pred, 0, 0, std::move(t)); }
TermPtr t_iszero(TermPtr t) { return mk(Tk::IsZero, 0, 0, std::move(t)); }
TermPtr t_ktpl() { return mk(Tk::KTpl); }
TermPtr t_stpl0() { return mk(Tk::STpl0); }
TermPtr t_stpl1(const Nat& a) { return mk(Tk::STpl1, a); }
TermPtr t_stpl2(const Nat& a, const Nat& b) { return mk(Tk::STpl2, a, b); }
TermPtr t_comp0() { return mk(Tk::CompTpl0); }
TermPtr t_comp1(const Nat& f) { return mk(Tk::CompTpl1, f); }
TermPtr t_comp2(const Nat& f, const Nat& g) { return mk(Tk::CompTpl2, f, g); }
TermPtr t_smnp(TermPtr s, TermPtr t) { return mk(Tk::SmnP, 0, 0, std::move(s), std::move(t)); }
TermPtr t_qadd(TermPtr s, TermPtr t) { return mk(Tk::QAddC, 0, 0, std::move(s), std::move(t)); }
TermPtr t_qlt(TermPtr s, TermPtr t) { return mk(Tk::QLtC, 0, 0, std::move(s), std::move(t)); }
TermPtr t_zadd(TermPtr s, TermPtr t) { return mk(Tk::ZAddC, 0, 0, std::move(s), std::move(t)); }
TermPtr t_zlt(TermPtr s, TermPtr t) { return mk(Tk::ZLtC, 0, 0, std::move(s), std::move(t)); }
TermPtr t_reject() { return mk(Tk::RejectT); }
TermPtr t_diverge() { return mk(Tk::DivergeT); }

Nat encode(const TermPtr& t) {
  Bits bits{1};
  ser(*t, bits);
  return bits_to_nat(bits);
}

TermPtr decode(const Nat& code) {
  if (code <= 0) return diverge_term();
  bool cacheable = nat_bitlen(code) <= kDecodeCacheBitCap;
  if (cacheable) {
    std::lock_guard<std::mutex> lk(g_decode_mu);
    auto it = decode_cache().find(code);
    if (it != decode_cache().end()) return it->second;
  }
  BitReader r(code);
  TermPtr t = parse_term(r, 0);
  if (!t || !r.eof()) t = diverge_term();
  if (cacheable) {
    std::lock_guard<std::mutex> lk(g_decode_mu);
    if (decode_cache().size() > 100000) decode_cache().clear();
    decode_cache()[code] = t;
  }
  return t;
}

bool valid_code(const Nat& code) {
  TermPtr t = decode(code);
  return encode(t) == code;
}

std::string term_str(const TermPtr& t) {
  switch (t->k) {
    case Tk::Var: return "var";
    case Tk::Num: return "num:" + t->num.get_str();
    case Tk::App: return "(app " + term_str(t->a) + " " + term_str(t->b) + ")";
    case Tk::OracleQ: return "(oracle " + term_str(t->a) + ")";
    case Tk::PairC: return "(pair " + term_str(t->a) + " " + term_str(t->b) + ")";
    case Tk::Fst: return "(fst " + term_str(t->a) + ")";
    case Tk::Snd: return "(snd " + term_str(t->a) + ")";
    case Tk::Succ: return "(succ " + term_str(t->a) + ")";
    case Tk::Pred: return "(pred " + term_str(t->a) + ")";
    case Tk::IsZero: return "(iszero " + term_str(t->a) + ")";
    case Tk::KTpl: return "Ktpl";
    case Tk::STpl0: return "Stpl";
    case Tk::STpl1: return "(Stpl " + t->num.get_str() + ")";
    case Tk::STpl2: return "(Stpl " + t->num.get_str() + " " + t->num2.get_str() + ")";
    case Tk::CompTpl0: return "comp";
    case Tk::CompTpl1: return "(comp " + t->num.get_str() + ")";
    case Tk::CompTpl2: return "(comp " + t->num.get_str() + " " + t->num2.get_str() + ")";
    case Tk::SmnP: return "(smn " + term_str(t->a) + " " + term_str(t->b) + ")";
    case Tk::QAddC: return "(qadd " + term_str(t->a) + " " + term_str(t->b) + ")";
    case Tk::QLtC: return "(qlt " + term_str(t->a) + " " + term_str(t->b) + ")";
    case Tk::ZAddC: return "(zadd " + term_str(t->a) + " " + term_str(t->b) + ")";
    case Tk::ZLtC: return "(zlt " + term_str(t->a) + " " + term_str(t->b) + ")";
    case Tk::RejectT: return "reject";
    case Tk::DivergeT: return "diverge";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// lazy values

struct MVal {
  enum class K { Num, Quote, S1, S2, C1, C2 };
  K k;
  Nat num;       // K::Num
  ValPtr a, b;   // payloads
  // memoized numbering
  mutable Nat forced;
  mutable size_t stream_bits = 0;  // bits of the tag+payload stream; 0 = unknown
  mutable bool have_forced = false;
};

namespace {

std::mutex g_force_mu;

ValPtr vmk(MVal::K k, Nat n = 0, ValPtr a = nullptr, ValPtr b = nullptr) {
  auto v = std::make_shared<MVal>();
  v->k = k;
  v->num = std::move(n);
  v->a = std::move(a);
  v->b = std::move(b);
  return v;
}

ValPtr v_quote(ValPtr p) { return vmk(MVal::K::Quote, 0, std::move(p)); }
ValPtr v_s1(ValPtr p) { return vmk(MVal::K::S1, 0, std::move(p)); }
ValPtr v_s2(ValPtr p, ValPtr q) { return vmk(MVal::K::S2, 0, std::move(p), std::move(q)); }
ValPtr v_c1(ValPtr p) { return vmk(MVal::K::C1, 0, std::move(p)); }
ValPtr v_c2(ValPtr p, ValPtr q) { return vmk(MVal::K::C2, 0, std::move(p), std::move(q)); }

size_t gamma_pos_len(size_t v) {
  size_t len = 0;
  for (size_t w = v; w > 0; w >>= 1) ++len;
  return 2 * len - 1;
}

// bit length of force(v)
size_t forced_bitlen(const MVal& v);

// stream bits (without the leading 1) of v-as-term-encoding
size_t stream_len(const MVal& v) {
  if (v.stream_bits) return v.stream_bits;
  size_t payload = 0;
  switch (v.k) {
    case MVal::K::Num:
      throw std::logic_error("stream_len on a plain number");
    case MVal::K::Quote: case MVal::K::S1: case MVal::K::C1: {
      size_t l = forced_bitlen(*v.a);
      payload = gamma_pos_len(l + 1) + (l ? l - 1 : 0);
      break;
    }
    case MVal::K::S2: case MVal::K::C2: {
      size_t la = forced_bitlen(*v.a);
      size_t lb = forced_bitlen(*v.b);
      payload = gamma_pos_len(la + 1) + (la ? la - 1 : 0) +
                gamma_pos_len(lb + 1) + (lb ? lb - 1 : 0);
      break;
    }
  }
  v.stream_bits = size_t(kTagBits) + payload;
  return v.stream_bits;
}

size_t forced_bitlen(const MVal& v) {
  if (v.k == MVal::K::Num) return nat_bitlen(v.num);
  return 1 + stream_len(v);
}

Tk val_tag(MVal::K k) {
  switch (k) {
    case MVal::K::Quote: return Tk::Num;
    case MVal::K::S1: return Tk::STpl1;
    case MVal::K::S2: return Tk::STpl2;
    case MVal::K::C1: return Tk::CompTpl1;
    case MVal::K::C2: return Tk::CompTpl2;
    default: return Tk::Var;
  }
}

// emit the stream of v-as-term-encoding (no leading 1)
void emit_val_stream(Bits& out, const MVal& v);

// emit a payload number whose value is force(p)
void emit_val_payload(Bits& out, const MVal& p) {
  if (p.k == MVal::K::Num) {
    emit_number(out, p.num);
    return;
  }
  size_t l = forced_bitlen(p);
  emit_gamma_pos(out, l + 1);
  emit_val_stream(out, p);  // = bits of force(p) minus the leading 1
}

void emit_val_stream(Bits& out, const MVal& v) {
  emit_bits(out, static_cast<unsigned long>(val_tag(v.k)), kTagBits);
  switch (v.k) {
    case MVal::K::Quote: case MVal::K::S1: case MVal::K::C1:
      emit_val_payload(out, *v.a);
      break;
    case MVal::K::S2: case MVal::K::C2:
      emit_val_payload(out, *v.a);
      emit_val_payload(out, *v.b);
      break;
    default:
      throw std::logic_error("emit_val_stream on a plain number");
  }
}

}  // namespace

ValPtr v_num(const Nat& n) { return vmk(MVal::K::Num, n); }

const Nat& force(const ValPtr& v) {
  if (v->k == MVal::K::Num) return v->num;
  {
    std::lock_guard<std::mutex> lk(g_force_mu);
    if (v->have_forced) return v->forced;
  }
  Bits bits{1};
  emit_val_stream(bits, *v);
  Nat n = bits_to_nat(bits);
  std::lock_guard<std::mutex> lk(g_force_mu);
  if (!v->have_forced) {
    v->forced = std::move(n);
    v->have_forced = true;
  }
  return v->forced;
}

std::string force_str(const ValPtr& v) { return force(v).get_str(); }

// ---------------------------------------------------------------------------
// the runner

namespace {

struct Frame {
  enum class K { Eval, App, S2Go, C2Go };
  K k;
  // Eval
  TermPtr hold;
  const MTerm* t = nullptr;
  // shared
  ValPtr input;        // Eval input / App argument
  ValPtr fn;           // App function / S2Go & C2Go first payload
  ValPtr gn;           // S2Go & C2Go second payload
  int stage = 0;
  ValPtr v1;
};

// Application of values is pure and deterministic for a fixed oracle, so a
// run may reuse results of repeated applications; shared closure structure
// then costs its size once instead of once per occurrence.
struct AppMemo {
  using Key = std::pair<const MVal*, const MVal*>;
  std::map<Key, std::pair<ValPtr, ValPtr>> keep;  // keeps keys alive
  std::map<Key, ValPtr> hits;

  const ValPtr* find(const ValPtr& f, const ValPtr& b) const {
    auto it = hits.find({f.get(), b.get()});
    return it == hits.end() ? nullptr : &it->second;
  }
  void put(const ValPtr& f, const ValPtr& b, const ValPtr& r) {
    if (hits.size() > 2000000) return;
    Key k{f.get(), b.get()};
    keep.emplace(k, std::make_pair(f, b));
    hits.emplace(k, r);
  }
};

struct Runner {
  const OracleView& ov;
  long long fuel;
  std::set<Int>* queries;
  std::vector<Frame> stack;
  AppMemo memo;

  bool charge() {
    if (fuel <= 0) return false;
    --fuel;
    return true;
  }

  bool push_eval(TermPtr hold, const MTerm* t, ValPtr input) {
    if (!charge()) return false;
    Frame f;
    f.k = Frame::K::Eval;
    f.hold = std::move(hold);
    f.t = t;
    f.input = std::move(input);
    stack.push_back(std::move(f));
    return true;
  }

  bool push_app(ValPtr fn, ValPtr arg) {
    if (!charge()) return false;
    Frame f;
    f.k = Frame::K::App;
    f.fn = std::move(fn);
    f.input = std::move(arg);
    stack.push_back(std::move(f));
    return true;
  }

  bool push_s2(ValPtr p, ValPtr q, ValPtr c) {
    if (!charge()) return false;
    Frame f;
    f.k = Frame::K::S2Go;
    f.fn = std::move(p);
    f.gn = std::move(q);
    f.input = std::move(c);
    stack.push_back(std::move(f));
    return true;
  }

  bool push_c2(ValPtr p, ValPtr q, ValPtr x) {
    if (!charge()) return false;
    Frame f;
    f.k = Frame::K::C2Go;
    f.fn = std::move(p);
    f.gn = std::move(q);
    f.input = std::move(x);
    stack.push_back(std::move(f));
    return true;
  }
};

}  // namespace

RunResultV run_val(const ValPtr& code, const ValPtr& input, const OracleView& ov,
                   long long fuel, std::set<Int>* queries) {
  Runner R{ov, fuel, queries, {}};
  const long long fuel0 = fuel;
  auto out = [&](RunResult::Kind k, ValPtr v = nullptr) {
    return RunResultV{k, std::move(v), fuel0 - R.fuel};
  };
  auto fuel_out = [&] { return out(RunResult::Kind::FuelOut); };

  if (!R.push_app(code, input)) return fuel_out();

  ValPtr ret;
  while (!R.stack.empty()) {
    Frame& f = R.stack.back();
    switch (f.k) {
      case Frame::K::App: {
        if (f.stage == 1) {
          // inner work finished: remember and hand the result up
          R.memo.put(f.fn, f.input, ret);
          R.stack.pop_back();
          continue;
        }
        ValPtr fn = f.fn, arg = f.input;
        if (const ValPtr* hit = R.memo.find(fn, arg)) {
          if (!R.charge()) return fuel_out();
          ret = *hit;
          R.stack.pop_back();
          continue;
        }
        switch (fn->k) {
          case MVal::K::Num: {
            f.stage = 1;
            TermPtr t = decode(fn->num);
            const MTerm* raw = t.get();
            if (!R.push_eval(std::move(t), raw, std::move(arg))) return fuel_out();
            break;
          }
          case MVal::K::Quote:
            if (!R.charge()) return fuel_out();
            ret = fn->a;  // K . v . b = v
            R.stack.pop_back();
            break;
          case MVal::K::S1:
            if (!R.charge()) return fuel_out();
            ret = v_s2(fn->a, std::move(arg));
            R.stack.pop_back();
            break;
          case MVal::K::S2:
            f.stage = 1;
            if (!R.push_s2(fn->a, fn->b, std::move(arg))) return fuel_out();
            break;
          case MVal::K::C1:
            if (!R.charge()) return fuel_out();
            ret = v_c2(fn->a, std::move(arg));
            R.stack.pop_back();
            break;
          case MVal::K::C2:
            f.stage = 1;
            if (!R.push_c2(fn->a, fn->b, std::move(arg))) return fuel_out();
            break;
        }
        continue;
      }

      case Frame::K::S2Go: {
        if (f.stage == 0) {
          f.stage = 1;
          if (!R.push_app(f.fn, f.input)) return fuel_out();
          continue;
        }
        if (f.stage == 1) {
          f.stage = 2;
          f.v1 = ret;
          if (!R.push_app(f.gn, f.input)) return fuel_out();
          continue;
        }
        ValPtr fn = f.v1, arg = ret;
        R.stack.pop_back();
        if (!R.push_app(std::move(fn), std::move(arg))) return fuel_out();
        continue;
      }

      case Frame::K::C2Go: {
        if (f.stage == 0) {
          f.stage = 1;
          if (!R.push_app(f.gn, f.input)) return fuel_out();
          continue;
        }
        ValPtr fn = f.fn, arg = ret;
        R.stack.pop_back();
        if (!R.push_app(std::move(fn), std::move(arg))) return fuel_out();
        continue;
      }

      case Frame::K::Eval:
        break;  // handled below
    }

    const MTerm& t = *f.t;
    switch (t.k) {
      case Tk::Var:
        ret = f.input;
        R.stack.pop_back();
        break;
      case Tk::Num:
        ret = v_num(t.num);
        R.stack.pop_back();
        break;
      case Tk::KTpl:
        ret = v_quote(f.input);
        R.stack.pop_back();
        break;
      case Tk::STpl0:
        ret = v_s1(f.input);
        R.stack.pop_back();
        break;
      case Tk::STpl1:
        ret = v_s2(v_num(t.num), f.input);
        R.stack.pop_back();
        break;
      case Tk::STpl2: {
        ValPtr p = v_num(t.num), q = v_num(t.num2), c = f.input;
        R.stack.pop_back();
        if (!R.push_s2(std::move(p), std::move(q), std::move(c))) return fuel_out();
        break;
      }
      case Tk::CompTpl0:
        ret = v_c1(f.input);
        R.stack.pop_back();
        break;
      case Tk::CompTpl1:
        ret = v_c2(v_num(t.num), f.input);
        R.stack.pop_back();
        break;
      case Tk::CompTpl2: {
        ValPtr p = v_num(t.num), q = v_num(t.num2), x = f.input;
        R.stack.pop_back();
        if (!R.push_c2(std::move(p), std::move(q), std::move(x))) return fuel_out();
        break;
      }
      case Tk::RejectT:
        return out(RunResult::Kind::Reject);
      case Tk::DivergeT:
        R.fuel = 0;
        return fuel_out();

      case Tk::OracleQ: case Tk::Fst: case Tk::Snd:
      case Tk::Succ: case Tk::Pred: case Tk::IsZero: {
        if (f.stage == 0) {
          f.stage = 1;
          if (!R.push_eval(f.hold, t.a.get(), f.input)) return fuel_out();
          break;
        }
        const Nat& v = force(ret);
        switch (t.k) {
          case Tk::OracleQ: {
            if (R.queries) R.queries->insert(v);
            if (ov.full) {
              ret = v_num(ov.full->bit(v));
            } else if (ov.prefix) {
              Nat len(static_cast<unsigned long>(ov.prefix->size()));
              if (v >= len) return out(RunResult::Kind::Star);
              ret = v_num((*ov.prefix)[v.get_ui()]);
            } else {
              return out(RunResult::Kind::Star);
            }
            break;
          }
          case Tk::Fst: ret = v_num(codec::proj1(v)); break;
          case Tk::Snd: ret = v_num(codec::proj2(v)); break;
          case Tk::Succ: ret = v_num(v + 1); break;
          case Tk::Pred: ret = v_num(v == 0 ? Nat(0) : Nat(v - 1)); break;
          case Tk::IsZero: ret = v_num(v == 0 ? true_code() : false_code()); break;
          default: break;
        }
        R.stack.pop_back();
        break;
      }

      case Tk::App: case Tk::PairC: case Tk::SmnP:
      case Tk::QAddC: case Tk::QLtC: case Tk::ZAddC: case Tk::ZLtC: {
        if (f.stage == 0) {
          f.stage = 1;
          if (!R.push_eval(f.hold, t.a.get(), f.input)) return fuel_out();
          break;
        }
        if (f.stage == 1) {
          f.stage = 2;
          f.v1 = ret;
          if (!R.push_eval(f.hold, t.b.get(), f.input)) return fuel_out();
          break;
        }
        if (t.k == Tk::App) {
          ValPtr fn = f.v1, arg = ret;
          R.stack.pop_back();
          if (!R.push_app(std::move(fn), std::move(arg))) return fuel_out();
          continue;
        }
        const Nat& x = force(f.v1);
        const Nat& y = force(ret);
        switch (t.k) {
          case Tk::PairC: ret = v_num(codec::pair(x, y)); break;
          case Tk::SmnP: ret = v_num(smn(x, y)); break;
          case Tk::QAddC:
            ret = v_num(codec::rat_encode(codec::rat_decode(x) + codec::rat_decode(y)));
            break;
          case Tk::QLtC:
            ret = v_num(codec::rat_decode(x) < codec::rat_decode(y) ? true_code()
                                                                    : false_code());
            break;
          case Tk::ZAddC:
            ret = v_num(codec::int_encode(codec::int_decode(x) + codec::int_decode(y)));
            break;
          case Tk::ZLtC:
            ret = v_num(codec::int_decode(x) < codec::int_decode(y) ? true_code()
                                                                    : false_code());
            break;
          default: break;
        }
        R.stack.pop_back();
        break;
      }
    }
  }
  return out(RunResult::Kind::Value, ret);
}

RunResult run_code(const Nat& code, const Nat& input, const OracleView& ov,
                   long long fuel, std::set<Int>* queries) {
  RunResultV r = run_val(v_num(code), v_num(input), ov, fuel, queries);
  RunResult out{r.kind, 0, r.steps};
  if (r.kind == RunResult::Kind::Value) out.value = force(r.value);
  return out;
}

RunResultV apply_vals(const ValPtr& m, const ValPtr& n, const OracleView& ov,
                      long long fuel, std::set<Int>* queries) {
  return run_val(m, n, ov, fuel, queries);
}

RunResult apply_codes(const Nat& m, const Nat& n, const OracleView& ov,
                      long long fuel, std::set<Int>* queries) {
  return run_code(m, n, ov, fuel, queries);
}

Nat smn(const Nat& e, const Nat& m) {
  return encode(t_app(t_num(e), t_pair(t_num(m), t_var())));
}

Nat kleene_fix(const Nat& t) {
  // b on <e, n>: run (t . smn(e,e)) on n; fix = smn(b, b)
  TermPtr body = t_app(t_app(t_num(t), t_smnp(t_fst(t_var()), t_fst(t_var()))),
                       t_snd(t_var()));
  Nat b = encode(body);
  return smn(b, b);
}

const Nat& k_code() {
  static Nat k = encode(t_ktpl());
  return k;
}

const Nat& s_code() {
  static Nat s = encode(t_stpl0());
  return s;
}

const Nat& true_code() {
  // value of S (K K) (S K K), the compiled <x><y>x
  static Nat v = [] {
    Nat kk = encode(t_num(k_code()));               // K . K
    Nat skk = encode(t_stpl2(k_code(), k_code()));  // S . K . K
    return encode(t_stpl2(kk, skk));
  }();
  return v;
}

const Nat& false_code() {
  // value of S (S (K S) (K K)) (K K), the compiled <x><y>y
  static Nat v = [] {
    Nat ks = encode(t_num(s_code()));
    Nat kk = encode(t_num(k_code()));
    Nat inner = encode(t_stpl2(ks, kk));
    return encode(t_stpl2(inner, kk));
  }();
  return v;
}

}  // namespace prw::machine
