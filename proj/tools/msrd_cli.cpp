// Command-line front end: build codes from any construction, run the
// exhaustive verification oracles, evaluate the sum-rank Singleton bound,
// and emit a comparison table over the built-in instance grid.
//
// Exit codes: 0 success/pass, 1 check failed, 2 usage or parse error,
// 3 enumeration guard exceeded.

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "msrd/msrd.hpp"

namespace {

using namespace msrd;

// ----- small parsers for the CLI surface -----

std::pair<u32, u32> factor_prime_power(u64 q) {
  if (q < 2) throw Error("q must be at least 2");
  u64 p = q;
  for (u64 d = 2; d * d <= q; ++d)
    if (q % d == 0) {
      p = d;
      break;
    }
  u32 e = 0;
  u64 rest = q;
  while (rest % p == 0) {
    rest /= p;
    ++e;
  }
  if (rest != 1) throw Error("q must be a prime power");
  return {static_cast<u32>(p), e};
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) out.push_back(item);
  return out;
}

u32 parse_u32(const std::string& s, const char* what) {
  if (s.empty()) throw Error(std::string("empty number for ") + what);
  u64 v = 0;
  for (char c : s) {
    if (c < '0' || c > '9') throw Error(std::string("bad number '") + s + "' for " + what);
    v = v * 10 + static_cast<u64>(c - '0');
    if (v > 0xffffffffull) throw Error(std::string("number too large for ") + what);
  }
  return static_cast<u32>(v);
}

BlockProfile parse_profile(const std::string& text) {
  std::vector<BlockShape> shapes;
  for (const std::string& item : split(text, ',')) {
    const std::size_t x = item.find('x');
    if (x == std::string::npos) throw Error("profile entries look like 2x2, comma-separated");
    shapes.push_back({parse_u32(item.substr(0, x), "rows"), parse_u32(item.substr(x + 1), "cols")});
  }
  if (shapes.empty()) throw Error("empty profile");
  return BlockProfile(shapes);
}

std::vector<BlockShape> parse_shape_list(const std::string& text) {
  std::vector<BlockShape> shapes;
  for (std::string item : split(text, ';')) {
    if (item.size() < 5 || item.front() != '(' || item.back() != ')')
      throw Error("block shapes look like (2,1), semicolon-separated");
    item = item.substr(1, item.size() - 2);
    const std::size_t comma = item.find(',');
    if (comma == std::string::npos) throw Error("block shapes look like (2,1)");
    shapes.push_back({parse_u32(item.substr(0, comma), "rows"),
                      parse_u32(item.substr(comma + 1), "cols")});
  }
  if (shapes.empty()) throw Error("empty shape list");
  return shapes;
}

std::vector<u32> parse_u32_csv(const std::string& text, const char* what) {
  std::vector<u32> out;
  for (const std::string& item : split(text, ',')) out.push_back(parse_u32(item, what));
  if (out.empty()) throw Error(std::string("empty list for ") + what);
  return out;
}

/// Index-set expression: comma list of 1-based entries "3" or ranges "1-2".
std::vector<u32> parse_index_set(const std::string& text) {
  std::vector<u32> out;
  for (const std::string& item : split(text, ',')) {
    const std::size_t dash = item.find('-');
    if (dash == std::string::npos) {
      const u32 v = parse_u32(item, "index");
      if (v == 0) throw Error("piece indices are 1-based");
      out.push_back(v - 1);
    } else {
      const u32 a = parse_u32(item.substr(0, dash), "index");
      const u32 b = parse_u32(item.substr(dash + 1), "index");
      if (a == 0 || b < a) throw Error("bad index range '" + item + "'");
      for (u32 v = a; v <= b; ++v) out.push_back(v - 1);
    }
  }
  return out;
}

/// Pieces "1-2x1;1x2;2x2": row set and column set per piece, 1-based.
MatrixPartition parse_pieces(const std::string& text) {
  MatrixPartition part;
  for (const std::string& item : split(text, ';')) {
    const std::size_t x = item.find('x');
    if (x == std::string::npos) throw Error("pieces look like 1-2x1, semicolon-separated");
    part.pieces.push_back({parse_index_set(item.substr(0, x)), parse_index_set(item.substr(x + 1))});
  }
  return part;
}

std::string profile_string(const BlockProfile& p) {
  std::string out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) out += ',';
    out += "(" + std::to_string(p.blocks()[i].rows) + "," + std::to_string(p.blocks()[i].cols) + ")";
  }
  return out;
}

FqLinearCode as_fq_linear(const CodeFile& file) {
  if (file.fq) return *file.fq;
  return to_fq_linear(*file.fqm);
}

// ----- shared option bags -----

struct BuildCommon {
  u64 q = 0;
  u32 m = 0, mu = 1, r = 1, k = 1, d0 = 0;
  std::string ext, breakpoints, pieces, inputs, c1, c2, out;
};

TowerPtr tower_for(const BuildCommon& opt) {
  auto [p, e] = factor_prime_power(opt.q);
  return FieldTower::make(p, e, opt.m);
}

int write_and_report(const CodeFile& file, const std::string& out_path) {
  save_code_file(out_path, serialize(file));
  const FqLinearCode view = as_fq_linear(file);
  std::cout << "dim=" << view.dim() << " blocks=" << profile_string(view.profile()) << "\n";
  return 0;
}

// ----- build subcommands -----

int build_lrs_cmd(const BuildCommon& opt) {
  return write_and_report({std::nullopt, build_lrs(tower_for(opt), opt.r, opt.k)}, opt.out);
}

int build_general_cmd(const BuildCommon& opt) {
  const TowerPtr tower = tower_for(opt);
  const NormClassReps reps = select_norm_reps(tower);
  const BetaVector beta = select_beta(tower, opt.mu, opt.r, opt.k);
  return write_and_report({std::nullopt, build_generator(tower, reps, beta, opt.k)}, opt.out);
}

int build_stack_cmd(const BuildCommon& opt) {
  StackSpec spec;
  for (const std::string& path : split(opt.inputs, ','))
    spec.components.push_back(as_fq_linear(load_code_file(path)));
  return write_and_report({stack_product(spec), std::nullopt}, opt.out);
}

int build_glue_cmd(const BuildCommon& opt) {
  const GlueSpec spec{as_fq_linear(load_code_file(opt.c1)), as_fq_linear(load_code_file(opt.c2))};
  return write_and_report({glue_bases(spec), std::nullopt}, opt.out);
}

int build_cons3_cmd(const BuildCommon& opt, bool three_step, u64 guard) {
  const TowerPtr tower = tower_for(opt);
  const LatticeIngredients ing = three_step ? build_lattice_t3(tower, opt.mu, opt.r)
                                            : build_lattice_t2(tower, opt.mu, opt.r, opt.k);
  const LatticeSpec spec = make_lattice_spec(ing, parse_shape_list(opt.ext),
                                             parse_u32_csv(opt.breakpoints, "breakpoints"));
  return write_and_report({extend_lattice(spec, guard), std::nullopt}, opt.out);
}

int build_cons4_cmd(const BuildCommon& opt, u64 guard) {
  const TowerPtr tower = tower_for(opt);
  const u64 q = tower->subfield_order();
  if (opt.mu * (q - 1) < 2) throw Error("need mu*(q-1) >= 2 so the tail block has a head");
  const u32 blocks = static_cast<u32>(opt.mu * (q - 1));
  const u32 t = opt.r;
  const u64 n = static_cast<u64>(blocks - 1) * opt.r;
  if (opt.d0 < 1 || opt.d0 > n + 1) throw Error("d0 out of range for these parameters");
  const u32 dim = static_cast<u32>(t + n - opt.d0 + 1);
  const NormClassReps reps = select_norm_reps(tower);
  const BetaVector beta = select_beta(tower, opt.mu, opt.r, dim);
  const FqmLinearCode d0_code = build_generator(tower, reps, beta, dim);
  return write_and_report(
      {extend_systematic(d0_code, t, parse_pieces(opt.pieces), guard), std::nullopt}, opt.out);
}

// ----- check -----

int check_cmd(const std::string& what, const std::string& path, u64 guard) {
  const CodeFile file = load_code_file(path);
  if (what == "msrd") {
    const MsrdCertificate cert = is_msrd(as_fq_linear(file), guard);
    std::cout << "d=" << cert.distance << " dim=" << cert.dimension << " bound=" << cert.bound
              << " msrd=" << (cert.msrd ? "true" : "false") << "\n";
    return cert.msrd ? 0 : 1;
  }
  if (what == "weights") {
    const auto dist = weight_distribution(as_fq_linear(file), guard);
    bool first = true;
    for (const auto& [w, count] : dist) {
      if (!first) std::cout << ' ';
      std::cout << w << ':' << count;
      first = false;
    }
    std::cout << "\n";
    return 0;
  }
  if (what == "one-weight") {
    const auto dist = weight_distribution(as_fq_linear(file), guard);
    std::size_t nonzero = 0;
    for (const auto& [w, count] : dist)
      if (w != 0) ++nonzero;
    std::cout << "one_weight=" << (nonzero == 1 ? "true" : "false")
              << " nonzero_weights=" << nonzero << "\n";
    return nonzero == 1 ? 0 : 1;
  }
  if (what == "dual-msrd") {
    if (!file.fqm) throw Error("dual check needs a generator-matrix code file");
    const MsrdCertificate cert = is_msrd(to_fq_linear(dual_code(*file.fqm)), guard);
    std::cout << "d=" << cert.distance << " dim=" << cert.dimension << " bound=" << cert.bound
              << " msrd=" << (cert.msrd ? "true" : "false") << "\n";
    return cert.msrd ? 0 : 1;
  }
  throw Error("unknown check '" + what + "'");
}

// ----- compare -----

struct CompareRow {
  std::string name;
  u64 q;
  std::string profile;  // static fallback, replaced by the computed one when run
  u64 cost;             // estimated codeword enumerations
  std::function<MsrdCertificate(u64 guard, std::string& profile_out)> run;
};

std::vector<CompareRow> compare_grid() {
  std::vector<CompareRow> rows;

  auto fq_cert = [](const FqLinearCode& code, u64 guard, std::string& prof) {
    prof = profile_string(code.profile());
    return is_msrd(code, guard);
  };

  rows.push_back({"lrs r2 k2", 3, "(2,2),(2,2)", 81,
                  [=](u64 g, std::string& prof) {
                    return fq_cert(to_fq_linear(build_lrs(FieldTower::make(3, 1, 2), 2, 2)), g, prof);
                  }});
  rows.push_back({"lrs r3 k1", 2, "(3,3)", 8,
                  [=](u64 g, std::string& prof) {
                    return fq_cert(to_fq_linear(build_lrs(FieldTower::make(2, 1, 3), 3, 1)), g, prof);
                  }});
  rows.push_back({"general mu2 r1 k2", 3, "(2,1),(2,1),(2,1),(2,1)", 81,
                  [=](u64 g, std::string& prof) {
                    auto tower = FieldTower::make(3, 1, 2);
                    auto code = build_generator(tower, select_norm_reps(tower),
                                                select_beta(tower, 2, 1, 2), 2);
                    return fq_cert(to_fq_linear(code), g, prof);
                  }});
  rows.push_back({"stack t2 of lrs", 3, "(4,2),(4,2)", 81 + 81 + 6561,
                  [=](u64 g, std::string& prof) {
                    auto comp = to_fq_linear(build_lrs(FieldTower::make(3, 1, 2), 2, 2));
                    const StackSpec spec{{comp, comp}};
                    const CombineCertificate c = check_stack_msrd(spec, g);
                    if (!c.ok) throw Error("stack premises failed: " + c.reason);
                    prof = profile_string(stack_product(spec).profile());
                    return MsrdCertificate{c.ok, c.distance, c.dimension, c.bound};
                  }});
  rows.push_back({"glue of lrs pair", 3, "(2,2),(2,2),(2,1),(2,1)", 9 + 9 + 9,
                  [=](u64 g, std::string& prof) {
                    auto tower = FieldTower::make(3, 1, 2);
                    auto c1 = to_fq_linear(build_lrs(tower, 2, 1));
                    auto c2 = to_fq_linear(build_lrs(tower, 1, 1));
                    const GlueSpec spec{c1, c2};
                    const CombineCertificate c = check_glue_msrd(spec, g);
                    if (!c.ok) throw Error("glue premises failed: " + c.reason);
                    prof = profile_string(glue_bases(spec).profile());
                    return MsrdCertificate{c.ok, c.distance, c.dimension, c.bound};
                  }});
  rows.push_back({"lattice ext t2 k1", 3, "(2,2),(2,2),(2,1),(2,1)", 900 + 729,
                  [=](u64 g, std::string& prof) {
                    auto ing = build_lattice_t2(FieldTower::make(3, 1, 2), 1, 2, 1);
                    auto spec = make_lattice_spec(ing, {{2, 1}, {2, 1}}, {1, 2});
                    return fq_cert(extend_lattice(spec, g), g, prof);
                  }});
  rows.push_back({"lattice ext t3", 2, "(3,3),(3,1),(2,1),(1,1),(1,1)", 729 + 128,
                  [=](u64 g, std::string& prof) {
                    auto ing = build_lattice_t3(FieldTower::make(2, 1, 3), 1, 3);
                    auto spec = make_lattice_spec(ing, {{3, 1}, {2, 1}, {1, 1}, {1, 1}}, {1, 3, 4});
                    return fq_cert(extend_lattice(spec, g), g, prof);
                  }});
  rows.push_back({"lattice ext t2 one-weight", 2, "(2,2),(2,1),(2,1)", 25 + 16,
                  [=](u64 g, std::string& prof) {
                    auto ing = build_lattice_t2(FieldTower::make(2, 1, 2), 1, 2, 0);
                    auto spec = make_lattice_spec(ing, {{2, 1}, {2, 1}}, {1, 2});
                    return fq_cert(extend_lattice(spec, g), g, prof);
                  }});
  rows.push_back({"systematic ext pieces", 3, "(2,2),(2,1),(1,1),(1,1)", 81 + 81,
                  [=](u64 g, std::string& prof) {
                    auto tower = FieldTower::make(3, 1, 2);
                    const MatrixPartition part{{{{0, 1}, {0}}, {{0}, {1}}, {{1}, {1}}}};
                    return fq_cert(extend_systematic(build_lrs(tower, 2, 2), 2, part, g), g, prof);
                  }});
  rows.push_back({"systematic ext whole tail", 3, "(2,2),(2,2)", 81 + 81,
                  [=](u64 g, std::string& prof) {
                    auto tower = FieldTower::make(3, 1, 2);
                    const MatrixPartition part{{{{0, 1}, {0, 1}}}};
                    return fq_cert(extend_systematic(build_lrs(tower, 2, 2), 2, part, g), g, prof);
                  }});
  return rows;
}

int compare_cmd(u64 budget, u64 q_filter, bool timings, const std::string& csv_path, u64 guard) {
  std::vector<CompareRow> rows = compare_grid();
  std::sort(rows.begin(), rows.end(), [](const CompareRow& a, const CompareRow& b) {
    if (a.q != b.q) return a.q < b.q;
    if (a.profile != b.profile) return a.profile < b.profile;
    return a.name < b.name;
  });

  struct Result {
    std::string name, profile, status;
    u64 q = 0;
    MsrdCertificate cert;
    long long ms = 0;
  };
  std::vector<Result> results;
  u64 spent = 0;
  bool all_ok = true;
  for (CompareRow& row : rows) {
    if (q_filter != 0 && row.q != q_filter) continue;
    Result res;
    res.name = row.name;
    res.q = row.q;
    res.profile = row.profile;
    if (spent + row.cost > budget) {
      res.status = "skipped";
    } else {
      spent += row.cost;
      const auto start = std::chrono::steady_clock::now();
      res.cert = row.run(guard, res.profile);
      res.ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                   std::chrono::steady_clock::now() - start)
                   .count();
      res.status = res.cert.msrd ? "ok" : "FAILED";
      if (!res.cert.msrd) all_ok = false;
    }
    results.push_back(std::move(res));
  }

  std::ostringstream table, csv;
  table << "construction               q  profile                          d  dim  bound  msrd   status\n";
  csv << "construction,q,profile,d,dim,bound,msrd,status";
  if (timings) csv << ",ms";
  csv << "\n";
  for (const Result& r : results) {
    std::ostringstream line;
    line.width(27);
    line.setf(std::ios::left);
    line << r.name;
    line << r.q << "  ";
    std::ostringstream prof;
    prof.width(31);
    prof.setf(std::ios::left);
    prof << r.profile;
    line << prof.str() << "  ";
    if (r.status == "skipped") {
      line << "-  -    -      -      skipped";
      csv << r.name << ',' << r.q << ",\"" << r.profile << "\",,,,," << "skipped";
    } else {
      line << r.cert.distance << "  " << r.cert.dimension << "    " << r.cert.bound << "      "
           << (r.cert.msrd ? "true " : "false") << "  " << r.status;
      csv << r.name << ',' << r.q << ",\"" << r.profile << "\"," << r.cert.distance << ','
          << r.cert.dimension << ',' << r.cert.bound << ',' << (r.cert.msrd ? "true" : "false")
          << ',' << r.status;
    }
    if (timings) {
      line << "  " << r.ms << "ms";
      csv << ',' << (r.status == "skipped" ? 0 : r.ms);
    }
    table << line.str() << "\n";
    csv << "\n";
  }
  std::cout << table.str();
  if (!csv_path.empty()) {
    std::ofstream out(csv_path, std::ios::binary);
    if (!out) throw Error("cannot write '" + csv_path + "'");
    out << csv.str();
  }
  return all_ok ? 0 : 1;
}

// ----- export -----

int export_cmd(const std::string& to, const std::string& in_path, const std::string& out_path) {
  const CodeFile file = load_code_file(in_path);
  if (to == "canonical") return write_and_report(file, out_path);
  if (to == "fq-basis") return write_and_report({as_fq_linear(file), std::nullopt}, out_path);
  throw Error("unknown export target '" + to + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"MSRD code construction and exhaustive sum-rank verification"};
  app.require_subcommand(1);

  u64 guard = kDefaultCodewordGuard;
  app.add_option("--guard", guard, "max codewords an oracle may enumerate")->capture_default_str();

  std::function<int()> action;

  // bound
  {
    auto* cmd = app.add_subcommand("bound", "evaluate the sum-rank Singleton bound");
    auto profile = std::make_shared<std::string>();
    auto d = std::make_shared<u64>(0);
    cmd->add_option("--profile", *profile, "block shapes, e.g. 2x2,2x2")->required();
    cmd->add_option("--d", *d, "minimum distance")->required();
    cmd->callback([&action, profile, d] {
      action = [profile, d] {
        const BlockProfile canon = parse_profile(*profile).canonical();
        const BoundExpansion ex = expand_distance(canon, *d);
        std::cout << "bound=" << singleton_bound(canon, *d) << " j=" << ex.block_index
                  << " delta=" << ex.delta << "\n";
        return 0;
      };
    });
  }

  // build
  {
    auto* build = app.add_subcommand("build", "construct a code and write it to a file");
    build->require_subcommand(1);
    auto opt = std::make_shared<BuildCommon>();

    auto add_field_opts = [&](CLI::App* cmd, bool with_k) {
      cmd->add_option("--q", opt->q, "subfield size (prime power)")->required();
      cmd->add_option("--m", opt->m, "extension degree")->required();
      cmd->add_option("--r", opt->r, "columns per block")->required();
      if (with_k) cmd->add_option("--k", opt->k, "dimension")->required();
      cmd->add_option("-o,--out", opt->out, "output code file")->required();
    };

    auto* lrs = build->add_subcommand("lrs", "linearized base family, mu=1");
    add_field_opts(lrs, true);
    lrs->callback([&action, opt] { action = [opt] { return build_lrs_cmd(*opt); }; });

    auto* gen = build->add_subcommand("msrd-general", "general base family");
    add_field_opts(gen, true);
    gen->add_option("--mu", opt->mu, "segments per norm class")->required();
    gen->callback([&action, opt] { action = [opt] { return build_general_cmd(*opt); }; });

    auto* stack = build->add_subcommand("stack", "stacked cartesian product");
    stack->add_option("--inputs", opt->inputs, "comma-separated component code files")->required();
    stack->add_option("-o,--out", opt->out, "output code file")->required();
    stack->callback([&action, opt] { action = [opt] { return build_stack_cmd(*opt); }; });

    auto* glue = build->add_subcommand("glue", "basis glueing of two codes");
    glue->add_option("--c1", opt->c1, "first code file")->required();
    glue->add_option("--c2", opt->c2, "second code file")->required();
    glue->add_option("-o,--out", opt->out, "output code file")->required();
    glue->callback([&action, opt] { action = [opt] { return build_glue_cmd(*opt); }; });

    auto* c3a = build->add_subcommand("cons3-t2", "two-step lattice extension");
    add_field_opts(c3a, true);
    c3a->get_option("--k")->description("base rows (0 allowed)");
    c3a->add_option("--mu", opt->mu, "segments per norm class")->capture_default_str();
    c3a->add_option("--ext", opt->ext, "extension block shapes, e.g. (2,1);(2,1)")->required();
    c3a->add_option("--breakpoints", opt->breakpoints, "cumulative group ends, e.g. 1,2")->required();
    c3a->callback([&action, &guard, opt] {
      action = [&guard, opt] { return build_cons3_cmd(*opt, false, guard); };
    });

    auto* c3b = build->add_subcommand("cons3-t3", "three-step lattice extension");
    add_field_opts(c3b, false);
    c3b->add_option("--mu", opt->mu, "segments per norm class")->capture_default_str();
    c3b->add_option("--ext", opt->ext, "extension block shapes")->required();
    c3b->add_option("--breakpoints", opt->breakpoints, "cumulative group ends, e.g. 1,2,3")->required();
    c3b->callback([&action, &guard, opt] {
      action = [&guard, opt] { return build_cons3_cmd(*opt, true, guard); };
    });

    auto* c4 = build->add_subcommand("cons4", "systematic extension along matrix pieces");
    add_field_opts(c4, false);
    c4->add_option("--mu", opt->mu, "segments per norm class")->capture_default_str();
    c4->add_option("--d0", opt->d0, "target distance (oracle distance of the base)")->required();
    c4->add_option("--pieces", opt->pieces, "matrix pieces, e.g. 1-2x1;1x2;2x2")->required();
    c4->callback([&action, &guard, opt] {
      action = [&guard, opt] { return build_cons4_cmd(*opt, guard); };
    });
  }

  // check
  {
    auto* cmd = app.add_subcommand("check", "run a verification oracle on a code file");
    auto what = std::make_shared<std::string>();
    auto path = std::make_shared<std::string>();
    cmd->add_option("what", *what, "msrd | weights | one-weight | dual-msrd")
        ->required()
        ->check(CLI::IsMember({"msrd", "weights", "one-weight", "dual-msrd"}));
    cmd->add_option("file", *path, "code file")->required();
    cmd->callback([&action, &guard, what, path] {
      action = [&guard, what, path] { return check_cmd(*what, *path, guard); };
    });
  }

  // compare
  {
    auto* cmd = app.add_subcommand("compare", "verify the built-in instance grid");
    auto budget = std::make_shared<u64>(1'000'000);
    auto qf = std::make_shared<u64>(0);
    auto timings = std::make_shared<bool>(false);
    auto csv = std::make_shared<std::string>();
    cmd->add_option("--budget", *budget, "total codeword enumeration budget")->capture_default_str();
    cmd->add_option("--q", *qf, "only rows with this subfield size");
    cmd->add_flag("--timings", *timings, "add a per-row runtime column");
    cmd->add_option("-o,--out", *csv, "also write the table as CSV");
    cmd->callback([&action, &guard, budget, qf, timings, csv] {
      action = [&guard, budget, qf, timings, csv] {
        return compare_cmd(*budget, *qf, *timings, *csv, guard);
      };
    });
  }

  // export
  {
    auto* cmd = app.add_subcommand("export", "rewrite a code file");
    auto to = std::make_shared<std::string>("canonical");
    auto in = std::make_shared<std::string>();
    auto out = std::make_shared<std::string>();
    cmd->add_option("--to", *to, "canonical | fq-basis")->capture_default_str();
    cmd->add_option("file", *in, "input code file")->required();
    cmd->add_option("-o,--out", *out, "output code file")->required();
    cmd->callback([&action, to, in, out] {
      action = [to, in, out] { return export_cmd(*to, *in, *out); };
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    return action ? action() : 2;
  } catch (const GuardError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
