#include "cubicsep/report.hpp"
#include "cubicsep/algebraic_cf.hpp"
#include "cubicsep/exponent_map.hpp"
#include "cubicsep/hall_thue.hpp"
#include "cubicsep/kernels.hpp"
#include "cubicsep/laurent_ff.hpp"
#include "cubicsep/pell_family.hpp"
#include "cubicsep/root_metrics.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

namespace cubicsep {

namespace {

bool any_false(const Json& j)
{
    if (j.is_boolean())
        return !j.get<bool>();
    if (j.is_structured())
        for (const auto& v : j)
            if (any_false(v))
                return true;
    return false;
}

std::string csv_cell(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"')
            out += '"';
        out += c;
    }
    return out + "\"";
}

Json opt(const std::optional<Interval>& iv)
{
    return iv ? Json(render(*iv)) : Json(nullptr);
}

// Each subcommand fills a Report from its validated options.
struct Options {
    // survey
    long b_max = 1, h_max = 10, keep = 20;
    std::string s = "1/2", t = "1/2";
    unsigned bits = 24;
    // cf
    std::string poly, root_lo, root_hi, pair;
    long depth = 10;
    // hall, thue, dmap
    std::uint64_t x_max = 10000;
    std::string epsilon = "0";
    long a_max = 1, q_max = 100, grid = 11;
    // family
    long n = 3;
    bool verify_cf = false, verify_identity = false;
    // ff
    std::string c = "1";
    long periods = 3, tdeg = 1, riccati_samples = 0;
    bool riccati = false, check_442 = false;
    // global
    unsigned workers = 1;
    std::uint64_t seed = 1;
};

Report survey_report(const Options& o)
{
    if (o.b_max < 1 || o.h_max < 1 || o.keep < 0)
        throw DomainError("survey needs bmax >= 1, hmax >= 1, keep >= 0");
    SurveyParams p{o.b_max, o.h_max, parse_rational(o.s), parse_rational(o.t), static_cast<std::size_t>(o.keep), o.bits};
    if (sign(p.s) <= 0 || sign(p.t) <= 0)
        throw DomainError("survey needs s, t > 0");
    const SurveyResult r = sep_survey_parallel(p, std::max(1u, o.workers) * 4, o.workers);
    Report rep;
    rep.command = "survey";
    rep.parameters = {{"bmax", o.b_max}, {"hmax", o.h_max}, {"s", render(p.s)}, {"t", render(p.t)},
                      {"keep", o.keep}, {"bits", o.bits}};
    rep.csv_header = {"b3", "b2", "b1", "b0", "B", "A", "sep_lo", "sep_hi", "score_lo", "score_hi"};
    for (const auto& rec : r.records) {
        rep.records.push_back({{"poly", render(rec.poly)},
                               {"B", render(rec.B)},
                               {"A", render(rec.A)},
                               {"sep", render(Interval(rec.sep_lo, rec.sep_hi))},
                               {"score", render(Interval(rec.score_lo, rec.score_hi))}});
        std::vector<std::string> row;
        for (int i = 3; i >= 0; --i)
            row.push_back(render(rec.poly.coeff(i)));
        for (const Rational& v : {Rational(rec.B), rec.A, rec.sep_lo, rec.sep_hi, rec.score_lo, rec.score_hi})
            row.push_back(render(v));
        rep.csv_rows.push_back(row);
    }
    rep.summary = {{"examined", r.examined},
                   {"reducible", r.reducible},
                   {"singular", r.singular},
                   {"min_score", opt(r.min_score)},
                   {"min_mahler", opt(r.min_mahler)},
                   {"mahler_poly", r.mahler_poly ? Json(render(*r.mahler_poly)) : Json(nullptr)},
                   {"mahler_positive", !r.min_mahler || sign(r.min_mahler->lo) > 0}};
    return rep;
}

Report cf_report(const Options& o)
{
    if (o.depth < 0)
        throw DomainError("depth must be >= 0");
    if (o.poly.empty() || o.root_lo.empty() || o.root_hi.empty())
        throw DomainError("cf needs --poly, --root-lo and --root-hi");
    const IntPolynomial p = IntPolynomial::parse(o.poly);
    if (p.degree() != 3)
        throw DomainError("cf needs a cubic");
    const AlgebraicReal x = AlgebraicReal::in_interval(p, parse_rational(o.root_lo), parse_rational(o.root_hi));
    const CFExpansion cf = cf_expand(x, static_cast<std::size_t>(o.depth));
    Report rep;
    rep.command = "cf";
    rep.parameters = {{"poly", render(p)}, {"root_lo", o.root_lo}, {"root_hi", o.root_hi}, {"depth", o.depth}};
    Json pq = Json::array(), conv = Json::array();
    bool det = true;
    for (std::size_t k = 0; k < cf.size(); ++k) {
        pq.push_back(render(cf.partial_quotients[k]));
        conv.push_back(render(cf.convergents[k]));
        if (k > 0)
            det = det && abs(Integer(cf.p(k - 1) * cf.q(k) - cf.p(k) * cf.q(k - 1))) == 1;
    }
    rep.summary = {{"minpoly", render(x.minpoly())}, {"partial_quotients", pq}, {"convergents", conv},
                   {"determinants_unit", det}};
    if (!o.pair.empty()) {
        const Rational target = parse_rational(o.pair);
        rep.parameters["pair"] = render(target);
        const PairParameters pp = pair_parameters(x, target, std::nullopt);
        rep.summary["pair"] = {{"index", pp.index},
                               {"A", render(pp.A)},
                               {"B", render(pp.B)},
                               {"q_next", render(pp.q_next)},
                               {"lead_identity", pp.lead_identity},
                               {"b_bound", pp.b_bound},
                               {"q_next_bracket", pp.q_next_bracket},
                               {"disc_bound", pp.disc_bound}};
    }
    return rep;
}

Report hall_report(const Options& o)
{
    if (o.x_max < 1 || o.x_max > kernels::kHallWideLimit)
        throw DomainError("xmax must be in [1, 2^40]");
    const Rational eps = parse_rational(o.epsilon);
    auto recs = hall_scan_parallel(o.x_max, eps, std::max(1u, o.workers) * 4, o.workers);
    Report rep;
    rep.command = "hall";
    rep.parameters = {{"xmax", o.x_max}, {"epsilon", render(eps)}};
    rep.csv_header = {"x", "y", "delta", "ratio_lo", "ratio_hi"};
    bool verified = true;
    for (const auto& r : recs) {
        verified = verified && hall_passes(r.x, r.delta, eps) && abs(Integer(r.x * r.x * r.x - r.y * r.y)) == r.delta;
        rep.records.push_back(
            {{"x", render(r.x)}, {"y", render(r.y)}, {"delta", render(r.delta)}, {"ratio", render(r.ratio)}});
        rep.csv_rows.push_back({render(r.x), render(r.y), render(r.delta), render(r.ratio.lo), render(r.ratio.hi)});
    }
    rep.summary = {{"count", recs.size()}, {"records_verified", verified}};
    return rep;
}

Report thue_report(const Options& o)
{
    const Rational eps = parse_rational(o.epsilon);
    auto res = thue_scan_parallel(o.a_max, o.q_max, eps, std::max(1u, o.workers) * 4, o.workers);
    Report rep;
    rep.command = "thue";
    rep.parameters = {{"amax", o.a_max}, {"qmax", o.q_max}, {"epsilon", render(eps)}};
    rep.csv_header = {"a3", "a2", "a1", "a0", "p", "q", "value", "score_lo", "score_hi"};
    bool verified = true;
    auto row_json = [](const ThueRecord& r) {
        return Json{{"a", {render(r.a[3]), render(r.a[2]), render(r.a[1]), render(r.a[0])}},
                    {"p", render(r.p)},
                    {"q", render(r.q)},
                    {"value", render(r.value)},
                    {"score", render(r.score)}};
    };
    for (const auto& r : res.records) {
        verified = verified && thue_eval(r.a, r.p, r.q) == r.value && r.value != 0;
        rep.records.push_back(row_json(r));
        rep.csv_rows.push_back({render(r.a[3]), render(r.a[2]), render(r.a[1]), render(r.a[0]), render(r.p),
                                render(r.q), render(r.value), render(r.score.lo), render(r.score.hi)});
    }
    rep.summary = {{"count", res.records.size()},
                   {"evaluated", res.evaluated},
                   {"minimum", res.minimum ? row_json(*res.minimum) : Json(nullptr)},
                   {"records_verified", verified}};
    return rep;
}

Report family_report(const Options& o)
{
    if (o.n < 1)
        throw DomainError("family needs n >= 1");
    Report rep;
    rep.command = "family";
    rep.parameters = {{"n", o.n}, {"verify_cf", o.verify_cf ? "yes" : "no"},
                      {"verify_identity", o.verify_identity ? "yes" : "no"}};
    std::optional<IdentityReport> ids;
    if (o.verify_identity)
        ids = verify_family_identity(o.n, o.workers);
    const auto pell = pell_seq(o.n);
    for (long n = 1; n <= o.n; ++n) {
        const FamilyMember m = family_member(n);
        Json j{{"n", n},
               {"poly", render(m.poly)},
               {"approx", render(m.approx)},
               {"removed_gcd", render(m.removed_gcd)},
               {"A_n", render(m.A)},
               {"u", render(m.u)},
               {"v", render(m.v)},
               {"pell_norm", render(pell[n].norm)},
               {"pell_cross", render(pell[n].cross)}};
        Json checks{{"pell_unit", abs(pell[n].norm) == 1 && abs(pell[n].cross) == 1}};
        if (ids) {
            const IdentityRow& r = ids->rows[static_cast<std::size_t>(n - 1)];
            j["value"] = render(r.value);
            checks["magnitude_two"] = r.magnitude_two;
            checks["irreducible"] = r.irreducible;
            checks["factor_check"] = r.factor_check;
        }
        if (o.verify_cf) {
            const CFMatch cm = verify_cf_pattern(n);
            Json pre = Json::array();
            for (const auto& a : cm.actual)
                pre.push_back(render(a));
            j["cf_prefix"] = pre;
            j["cf_mismatch"] = cm.mismatch ? Json(*cm.mismatch) : Json(nullptr);
            checks["cf_pattern"] = cm.full();
        }
        j["checks"] = checks;
        rep.records.push_back(j);
    }
    rep.summary = {{"members", o.n}, {"all_pass", !any_false(rep.records)}};
    return rep;
}

Report dmap_report(const Options& o)
{
    const Rational eps = parse_rational(o.epsilon);
    const auto rows = region_report(eps, o.grid);
    Report rep;
    rep.command = "dmap";
    rep.parameters = {{"epsilon", render(eps)}, {"grid", o.grid}};
    rep.csv_header = {"v", "outer_u", "inner_u", "provenance"};
    bool ok = true;
    for (const auto& r : rows) {
        std::string prov = provenance_name(Provenance::outer_bound);
        if (r.inner_u)
            prov += std::string(";") + provenance_name(Provenance::hall_conditional);
        if (r.liouville)
            prov += std::string(";") + provenance_name(Provenance::liouville);
        ok = ok && (!r.inner_u || *r.inner_u >= r.outer_u);
        rep.records.push_back({{"v", render(r.v)},
                               {"outer_u", render(r.outer_u)},
                               {"inner_u", r.inner_u ? Json(render(*r.inner_u)) : Json(nullptr)},
                               {"provenance", prov}});
        rep.csv_rows.push_back({render(r.v), render(r.outer_u), r.inner_u ? render(*r.inner_u) : "", prov});
    }
    rep.summary = {{"rows", rows.size()}, {"inner_above_outer", ok}};
    return rep;
}

Json ff_cubic_json(const ff::TPolyCubic& p)
{
    return Json{{"poly", p.to_string()}, {"height", render(p.height())}};
}

Json riccati_json(const ff::TPolyCubic& p)
{
    const ff::RiccatiCoeffs r = ff::derive_riccati(p);
    const Rational h = p.height();
    return Json{{"cubic", ff_cubic_json(p)},
                {"A", r.A.to_string()},
                {"B", r.B.to_string()},
                {"C", r.C.to_string()},
                {"D", r.D.to_string()},
                {"max_norm", render(r.max_norm())},
                {"identity", ff::riccati_identity(p, r)},
                {"height_bound", r.max_norm() <= h * h * h * h}};
}

Report ff_report(const Options& o)
{
    if (o.periods < 1 || o.periods > 64)
        throw DomainError("periods must be in [1, 64]");
    if (o.tdeg < 1 || o.tdeg > 8)
        throw DomainError("tdeg must be in [1, 8]");
    if (o.riccati_samples < 0 || o.riccati_samples > 10000)
        throw DomainError("riccati-samples must be in [0, 10000]");
    ff::KCFTemplate tmpl{parse_rational(o.c), ff::TPoly::monomial(1, o.tdeg)};
    if (tmpl.c == 0)
        throw DomainError("c must be nonzero");
    const ff::TPolyCubic p = tmpl.cubic();
    const std::size_t count = static_cast<std::size_t>(4 * o.periods + 1);
    Report rep;
    rep.command = "ff";
    rep.parameters = {{"c", render(tmpl.c)},
                      {"periods", o.periods},
                      {"tdeg", o.tdeg},
                      {"riccati", o.riccati ? "yes" : "no"},
                      {"check_442", o.check_442 ? "yes" : "no"}};
    if (o.riccati_samples > 0) {
        rep.parameters["riccati_samples"] = o.riccati_samples;
        rep.parameters["seed"] = o.seed;
    }

    std::vector<std::size_t> idx(count);
    for (std::size_t k = 0; k < count; ++k)
        idx[k] = k;
    const auto rows = ff::ff_approx_check(p, tmpl, idx);
    const auto conv = ff::kcf_convergents(tmpl, count);
    const auto series = ff::newton_root(p, tmpl.branch(), 12);
    for (const auto& r : rows) {
        Json j{{"k", r.index},
               {"p", conv[r.index].p.to_string()},
               {"q", conv[r.index].q.to_string()},
               {"q_norm", render(r.q_norm)},
               {"distance", render(r.distance)},
               {"role", r.designated ? "designated" : "informational"},
               {"convergent", r.convergent}};
        if (r.designated)
            j["approx_bound"] = r.pass;
        rep.records.push_back(j);
    }
    rep.summary = {{"cubic", ff_cubic_json(p)},
                   {"series", series.to_string()},
                   {"exponent_claims", {{"stated", "(3,2)"}, {"derived", "(4,2)"}}}};
    if (o.riccati)
        rep.summary["riccati"] = riccati_json(p);
    if (o.check_442) {
        Json chain = Json::array();
        for (const auto& r : ff::chain_42(p, tmpl.branch(), count))
            chain.push_back({{"k", r.index},
                             {"distance", render(r.distance)},
                             {"q_norm", render(r.q_norm)},
                             {"riccati_bound", render(r.riccati_bound)},
                             {"lower_bound", r.first},
                             {"height_bound", r.second}});
        rep.summary["chain_42"] = chain;
    }
    if (o.riccati_samples > 0) {
        std::mt19937_64 rng(o.seed);
        std::uniform_int_distribution<long> deg(0, 3), coef(-6, 6);
        Json samples = Json::array();
        long done = 0;
        while (done < o.riccati_samples) {
            ff::TPolyCubic q;
            for (auto& c : q.a) {
                std::vector<Rational> v(static_cast<std::size_t>(deg(rng)) + 1);
                for (auto& x : v)
                    x = coef(rng);
                c = ff::TPoly(v);
            }
            if (q.a[3].is_zero() || !q.irreducible())
                continue;
            samples.push_back(riccati_json(q));
            ++done;
        }
        rep.summary["riccati_samples"] = samples;
    }
    return rep;
}

}  // namespace

bool Report::passed() const
{
    return !any_false(records) && !any_false(summary);
}

std::string render(const Rational& r)
{
    Rational c = r;
    c.canonicalize();
    return to_string(c);
}

std::string render(const Integer& z)
{
    return to_string(z);
}

std::string render(const Interval& iv)
{
    return "[" + render(iv.lo) + "," + render(iv.hi) + "]";
}

std::string render(const IntPolynomial& p)
{
    std::string out;
    for (int i = std::max(p.degree(), 0); i >= 0; --i)
        out += (out.empty() ? "" : ",") + render(p.coeff(i));
    return out;
}

const char* version()
{
    return "0.1.0";
}

std::string backend_fingerprint()
{
    return std::string("gmp ") + gmp_version + ", limb " + std::to_string(mp_bits_per_limb);
}

std::string serialize(const Report& report, Format format)
{
    if (format == Format::csv) {
        if (report.csv_header.empty())
            throw CsvUnsupported(report.command + " reports are nested; use --format json");
        std::string out;
        for (std::size_t i = 0; i < report.csv_header.size(); ++i)
            out += (i ? "," : "") + csv_cell(report.csv_header[i]);
        out += "\n";
        for (const auto& row : report.csv_rows) {
            for (std::size_t i = 0; i < row.size(); ++i)
                out += (i ? "," : "") + csv_cell(row[i]);
            out += "\n";
        }
        return out;
    }
    Json doc{{"command", report.command},
             {"parameters", report.parameters},
             {"records", report.records},
             {"summary", report.summary},
             {"passed", report.passed()},
             {"version", version()},
             {"backend", backend_fingerprint()}};
    return doc.dump(2) + "\n";
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Root separation and rational approximation toolkit for cubic numbers"};
    app.require_subcommand(1);
    app.fallthrough();
    Options o;
    std::string format = "json", out_path;
    app.add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}))->envname("CUBICSEP_FORMAT");
    app.add_option("--out", out_path, "output file (default stdout)")->envname("CUBICSEP_OUT");
    app.add_option("--workers", o.workers, "worker threads")->check(CLI::Range(1u, 256u))->envname("CUBICSEP_WORKERS");
    app.add_option("--seed", o.seed, "seed for sampled checks")->envname("CUBICSEP_SEED");

    std::function<Report(const Options&)> job;
    auto sub = [&](const char* name, const char* help, Report (*fn)(const Options&)) {
        CLI::App* s = app.add_subcommand(name, help);
        s->callback([&job, fn] { job = fn; });
        return s;
    };

    CLI::App* survey = sub("survey", "separation survey of integer cubics", survey_report);
    survey->add_option("--bmax", o.b_max, "largest leading coefficient");
    survey->add_option("--hmax", o.h_max, "largest height");
    survey->add_option("--s", o.s, "exponent s");
    survey->add_option("--t", o.t, "exponent t");
    survey->add_option("--keep", o.keep, "records kept");
    survey->add_option("--bits", o.bits, "enclosure precision")->check(CLI::Range(4u, 4096u));

    CLI::App* cf = sub("cf", "continued fraction of a real cubic root", cf_report);
    cf->add_option("--poly", o.poly, "a3,a2,a1,a0")->required();
    cf->add_option("--root-lo", o.root_lo, "isolating interval start")->required();
    cf->add_option("--root-hi", o.root_hi, "isolating interval end")->required();
    cf->add_option("--depth", o.depth, "last partial quotient index");
    cf->add_option("--pair", o.pair, "convergent p/q for the pair parameters");

    CLI::App* hall = sub("hall", "small values of |x^3 - y^2|", hall_report);
    hall->add_option("--xmax", o.x_max, "scan bound")->required();
    hall->add_option("--epsilon", o.epsilon, "exponent epsilon");

    CLI::App* thue = sub("thue", "small values of binary cubic forms", thue_report);
    thue->add_option("--amax", o.a_max, "coefficient bound")->required();
    thue->add_option("--qmax", o.q_max, "denominator bound")->required();
    thue->add_option("--epsilon", o.epsilon, "exponent epsilon")->required();

    CLI::App* family = sub("family", "the Pell-driven cubic family", family_report);
    family->add_option("--n", o.n, "members 1..n")->required();
    family->add_flag("--verify-cf", o.verify_cf, "check the continued fraction template");
    family->add_flag("--verify-identity", o.verify_identity, "check |q^3 P(p/q)| = 2");

    CLI::App* dmap = sub("dmap", "exponent region table", dmap_report);
    dmap->add_option("--epsilon", o.epsilon, "exponent epsilon")->required();
    dmap->add_option("--grid", o.grid, "grid points on [2, 3]")->required();

    CLI::App* ffc = sub("ff", "function field continued fractions", ff_report);
    ffc->add_option("--c", o.c, "template parameter");
    ffc->add_option("--periods", o.periods, "template periods");
    ffc->add_option("--tdeg", o.tdeg, "use t^tdeg in place of t");
    ffc->add_flag("--riccati", o.riccati, "derive the Riccati equation");
    ffc->add_flag("--check-442", o.check_442, "check the (4,2) bound chain");
    ffc->add_option("--riccati-samples", o.riccati_samples, "random cubics for the Riccati check");

    std::vector<std::string> argv_store{"cubicsep"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& a : argv_store)
        argv.push_back(a.data());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::Success& e) {
        std::ostringstream help;
        app.exit(e, help, err);
        out << help.str();
        return 0;
    } catch (const CLI::ParseError& e) {
        std::ostringstream text, errs;
        app.exit(e, text, errs);
        err << errs.str() << text.str() << app.help();
        return 2;
    }

    try {
        const Report rep = job(o);
        const std::string bytes = serialize(rep, format == "csv" ? Format::csv : Format::json);
        if (out_path.empty()) {
            out << bytes;
        } else {
            std::ofstream f(out_path, std::ios::binary);
            if (!f)
                throw DomainError("cannot open " + out_path);
            f << bytes;
        }
        return rep.passed() ? 0 : 1;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const PrecisionError& e) {
        err << "precision: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace cubicsep
