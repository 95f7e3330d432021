#include "spamflow/pipeline/fixture.hpp"

#include <algorithm>
#include <array>
#include <filesystem>
#include <map>
#include <set>
#include <sstream>
#include <tuple>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#include "spamflow/corpus/tokenize.hpp"
#include "spamflow/pipeline/config.hpp"
#include "spamflow/util/base58.hpp"
#include "spamflow/util/csv.hpp"
#include "spamflow/util/errors.hpp"
#include "spamflow/util/money.hpp"
#include "spamflow/util/rng.hpp"
#include "spamflow/util/time.hpp"

namespace spamflow::pipeline {

namespace fs = std::filesystem;
using util::Cents;
using util::Satoshi;

FixtureSpec FixtureSpec::from_json_file(const std::string& path) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(util::read_file(path));
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("bad fixture spec " + path + ": " + e.what());
    }
    FixtureSpec spec;
    if (j.contains("campaigns")) spec.campaigns = j["campaigns"].get<int>();
    if (j.contains("emails_per_campaign")) spec.emails_per_campaign = j["emails_per_campaign"].get<int>();
    if (j.contains("payments_per_campaign")) spec.payments_per_campaign = j["payments_per_campaign"].get<int>();
    if (j.contains("other_campaigns")) spec.other_campaigns = j["other_campaigns"].get<int>();
    if (j.contains("other_emails")) spec.other_emails = j["other_emails"].get<int>();
    if (j.contains("corpus_start")) spec.corpus_start = j["corpus_start"].get<std::string>();
    return spec;
}

namespace {

constexpr Satoshi fee_sat = 1000;
constexpr util::PriceE4 price_e4 = 4000'0000;  // constant $4000/BTC close

Satoshi cents_to_sat(Cents cents) {
    // exact at the fixture's constant price: $1 == 25,000 sat
    return cents * 250;
}

// ---------------------------------------------------------------------------
// word material

std::vector<std::string> build_vocabulary(util::Rng& rng, std::size_t count) {
    static const char* syllables[] = {"ba", "re", "mo", "ti", "ka", "su", "len", "dor",
                                      "vi", "na", "pel", "gu", "ran", "ze", "fo", "mi",
                                      "tal", "qu", "hes", "lo", "der", "an", "cu", "ver"};
    std::vector<std::string> vocab;
    std::unordered_set<std::string> seen;
    while (vocab.size() < count) {
        const int parts = 2 + static_cast<int>(rng.below(3));
        std::string word;
        for (int k = 0; k < parts; ++k) {
            word += syllables[rng.below(std::size(syllables))];
        }
        if (seen.insert(word).second) vocab.push_back(std::move(word));
    }
    return vocab;
}

std::vector<std::string> draw_words(util::Rng& rng, const std::vector<std::string>& vocab,
                                    std::size_t count) {
    std::vector<std::string> words;
    words.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        words.push_back(vocab[rng.below(vocab.size())]);
    }
    return words;
}

std::string join(const std::vector<std::string>& words) {
    std::string out;
    for (std::size_t i = 0; i < words.size(); ++i) {
        if (i) out.push_back(' ');
        out += words[i];
    }
    return out;
}

std::string make_address(util::Rng& rng) {
    std::array<std::uint8_t, 20> hash{};
    for (auto& b : hash) b = static_cast<std::uint8_t>(rng.below(256));
    return util::encode_p2pkh_like(0x00, hash);
}

std::string amount_in_words(Cents cents, const std::string& currency, bool symbol_style,
                            bool comma_grouped) {
    std::string digits = util::format_scaled_decimal(cents, 2);
    if (digits.size() > 3 && digits.substr(digits.size() - 3) == ".00") {
        digits.resize(digits.size() - 3);  // spam bodies quote whole amounts
    }
    if (comma_grouped) {
        std::string grouped;
        int run = 0;
        for (std::size_t i = digits.size(); i > 0; --i) {
            grouped.push_back(digits[i - 1]);
            if (++run == 3 && i > 1) {
                grouped.push_back(',');
                run = 0;
            }
        }
        std::reverse(grouped.begin(), grouped.end());
        digits = grouped;
    }
    if (symbol_style && currency == "USD") return "$" + digits;
    return digits + " " + currency;
}

// ---------------------------------------------------------------------------
// ledger construction

struct PlannedTx {
    std::string tx_id;
    std::int64_t timestamp = 0;
    std::vector<std::tuple<std::string, Satoshi, std::string, std::uint32_t>> inputs;
    std::vector<std::pair<std::string, Satoshi>> outputs;
};

class LedgerBuilder {
public:
    // coinbase: no inputs, any outputs
    void coinbase(const std::string& tx_id, std::int64_t ts,
                  const std::vector<std::pair<std::string, Satoshi>>& outputs) {
        PlannedTx tx;
        tx.tx_id = tx_id;
        tx.timestamp = ts;
        tx.outputs = outputs;
        register_outputs(tx);
        txs_.push_back(std::move(tx));
    }

    // spends the oldest unspent UTXOs of each listed address
    void spend(const std::string& tx_id, std::int64_t ts,
               const std::vector<std::pair<std::string, std::uint32_t>>& utxo_refs,
               const std::vector<std::pair<std::string, Satoshi>>& outputs) {
        PlannedTx tx;
        tx.tx_id = tx_id;
        tx.timestamp = ts;
        Satoshi in_total = 0;
        for (const auto& [src_tx, index] : utxo_refs) {
            auto it = utxos_.find(src_tx + ":" + std::to_string(index));
            if (it == utxos_.end()) {
                throw InternalError("fixture plan spends unknown/spent utxo " + src_tx + ":" +
                                    std::to_string(index));
            }
            tx.inputs.emplace_back(it->second.first, it->second.second, src_tx, index);
            in_total += it->second.second;
            utxos_.erase(it);
        }
        Satoshi out_total = 0;
        for (const auto& [addr, value] : outputs) out_total += value;
        if (in_total < out_total + fee_sat) {
            throw InternalError("fixture plan overspends in " + tx_id);
        }
        tx.outputs = outputs;
        register_outputs(tx);
        txs_.push_back(std::move(tx));
    }

    Satoshi utxo_value(const std::string& tx_id, std::uint32_t index) const {
        auto it = utxos_.find(tx_id + ":" + std::to_string(index));
        if (it == utxos_.end()) throw InternalError("unknown utxo " + tx_id);
        return it->second.second;
    }

    const std::vector<PlannedTx>& txs() const { return txs_; }

    std::string to_jsonl() const {
        std::ostringstream out;
        for (const auto& tx : txs_) {
            nlohmann::json j;
            j["tx_id"] = tx.tx_id;
            j["timestamp"] = util::format_datetime(tx.timestamp);
            j["inputs"] = nlohmann::json::array();
            for (const auto& [addr, value, src, index] : tx.inputs) {
                j["inputs"].push_back({{"address", addr},
                                       {"value_sat", value},
                                       {"spends", {{"tx_id", src}, {"index", index}}}});
            }
            j["outputs"] = nlohmann::json::array();
            for (std::size_t i = 0; i < tx.outputs.size(); ++i) {
                j["outputs"].push_back({{"index", i},
                                        {"address", tx.outputs[i].first},
                                        {"value_sat", tx.outputs[i].second}});
            }
            out << j.dump() << '\n';
        }
        return out.str();
    }

private:
    void register_outputs(const PlannedTx& tx) {
        for (std::size_t i = 0; i < tx.outputs.size(); ++i) {
            utxos_[tx.tx_id + ":" + std::to_string(i)] = tx.outputs[i];
        }
    }

    std::vector<PlannedTx> txs_;
    std::unordered_map<std::string, std::pair<std::string, Satoshi>> utxos_;
};

struct PlannedPayment {
    std::string tx_id;
    std::uint32_t index = 0;
    std::string address;
    std::int64_t timestamp = 0;
    Satoshi sat = 0;
    Cents usd = 0;
    bool collector = true;
    bool range = true;
    bool moving = true;

    bool kept_12() const { return collector && range; }
    bool kept_123() const { return collector && range && moving; }
    std::string ref() const { return tx_id + ":" + std::to_string(index); }
};

}  // namespace

void generate_fixture(const FixtureSpec& spec, std::uint64_t seed, const std::string& out_dir) {
    // the planted edge cases (boundaries, supercluster, exchange, S extrema)
    // occupy campaigns 0..13, so smaller corpora are not expressible
    if (spec.campaigns < 15 || spec.campaigns > 200) {
        throw ConfigError("campaigns must be in [15,200]");
    }
    if (spec.emails_per_campaign < 12) throw ConfigError("emails_per_campaign must be >= 12");
    if (spec.payments_per_campaign < 4 || spec.payments_per_campaign > 50) {
        throw ConfigError("payments_per_campaign must be in [4,50]");
    }

    fs::create_directories(out_dir);
    const fs::path out(fs::absolute(out_dir));
    util::Rng rng(seed);

    const int C = spec.campaigns;
    const int E = spec.emails_per_campaign;
    const int P = spec.payments_per_campaign;

    static const char* languages[] = {"en", "cs", "de", "es", "it", "pl", "nl", "ko"};
    static const Cents base_amount[] = {70000, 30000, 40000, 25000, 28000, 29000, 48000, 50000};

    // ----- campaign plans -------------------------------------------------
    struct Campaign {
        std::string name;
        std::string language;
        std::string currency;
        Cents base = 0;           // in currency units (cents)
        bool constant_amount = false;
        int secret = 0;  // 0 none, 1 password, 2 phone
        std::vector<std::string> addresses;      // 3 seeds, [2] never funded
        std::string shared;                      // extra shared seed, may be empty
        std::vector<std::string> intro;          // 25 words
        std::vector<std::vector<std::string>> synonyms;  // 6 slots x 3 variants
        std::vector<std::string> closing;        // exactly 50 words, the suffix
    };

    const auto vocab = build_vocabulary(rng, 1400);
    const std::string shared_addr_0 = make_address(rng);
    const std::string shared_addr_1 = make_address(rng);

    std::vector<Campaign> campaigns(static_cast<std::size_t>(C));
    std::vector<std::vector<std::string>> closing_sets;
    for (int c = 0; c < C; ++c) {
        Campaign& cp = campaigns[static_cast<std::size_t>(c)];
        cp.name = std::string(1, static_cast<char>('A' + c % 26)) +
                  (c >= 26 ? std::to_string(c / 26) : "");
        const int lang_idx = c % 8;
        cp.language = languages[lang_idx];
        cp.currency = cp.language == "de" ? "EUR" : "USD";
        cp.base = base_amount[lang_idx] + static_cast<Cents>(c / 8) * 2000;
        if (c == C - 1 && C >= 8) {
            // one constant-priced campaign exercises the zero-variance path
            cp.language = "no";
            cp.currency = "NOK";
            cp.base = 200000;  // 2000 NOK == $230.00 at the fixed rate
            cp.constant_amount = true;
        }
        cp.secret = (c == 1 || c == 3) ? 2 : (c % 2 == 0 ? 1 : 0);
        for (int j = 0; j < 3; ++j) cp.addresses.push_back(make_address(rng));
        if (c <= 3) cp.shared = shared_addr_0;
        else if (c <= 5) cp.shared = shared_addr_1;

        cp.intro = draw_words(rng, vocab, 25);
        for (int s = 0; s < 6; ++s) cp.synonyms.push_back(draw_words(rng, vocab, 3));

        // closing suffixes must stay well below the merge threshold pairwise
        for (int attempt = 0;; ++attempt) {
            auto closing = draw_words(rng, vocab, 50);
            const auto set = corpus::token_set(closing);
            bool ok = true;
            for (const auto& other : closing_sets) {
                if (corpus::jaccard(set, other) > 0.15) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                closing_sets.push_back(set);
                cp.closing = std::move(closing);
                break;
            }
            if (attempt > 200) throw InternalError("fixture: cannot separate closing suffixes");
        }
    }

    // ----- corpus ---------------------------------------------------------
    const std::int64_t corpus_start = util::parse_date(spec.corpus_start) * util::seconds_per_day;

    std::unordered_set<std::string> password_registry;
    auto fresh_secret = [&](int kind) {
        static const char b36[] = "abcdefghijklmnopqrstuvwxyz0123456789";
        while (true) {
            std::string s;
            if (kind == 2) {
                s = "+1555";
                for (int k = 0; k < 7; ++k) s.push_back(static_cast<char>('0' + rng.below(10)));
            } else {
                for (int k = 0; k < 10; ++k) s.push_back(b36[rng.below(36)]);
            }
            if (password_registry.insert(s).second) return s;
        }
    };

    struct EmailPlan {
        std::string id;
        int campaign = 0;
        std::int64_t date = 0;
        bool date_valid = true;
        Cents amount = 0;  // currency units
        Cents usd = 0;
        std::string secret;
        std::vector<std::string> addresses;
        std::string body;
    };

    auto amount_for = [&](const Campaign& cp, int c, int i) -> Cents {
        if (cp.constant_amount) return cp.base;
        Cents v = cp.base + 500 * ((i * 31 + c) % 11 - 5);
        if (c == 12 && i == 7) v = 20000;   // global S minimum: $200
        if (c == 13 && i == 7) v = 700000;  // global S maximum: $7,000
        return v;
    };
    auto to_usd = [&](Cents amount, const std::string& currency) -> Cents {
        if (currency == "USD") return amount;
        if (currency == "EUR") return util::convert_cents(amount, 1'140'000);  // 1.14
        return util::convert_cents(amount, 115'000);                           // NOK 0.115
    };

    std::vector<EmailPlan> emails;
    emails.reserve(static_cast<std::size_t>(C) * static_cast<std::size_t>(E));
    for (int i = 0; i < E; ++i) {
        for (int c = 0; c < C; ++c) {
            const Campaign& cp = campaigns[static_cast<std::size_t>(c)];
            EmailPlan em;
            em.id = "e" + std::to_string(c) + "-" + std::to_string(i);
            em.campaign = c;
            em.date = corpus_start +
                      ((static_cast<std::int64_t>(i) * 127 + c * 17) % 140) * util::seconds_per_day +
                      (static_cast<std::int64_t>(i) * 25200 + c * 60) % util::seconds_per_day;
            em.amount = amount_for(cp, c, i);
            em.usd = to_usd(em.amount, cp.currency);
            em.addresses.push_back(cp.addresses[static_cast<std::size_t>(i % 3)]);
            if (!cp.shared.empty() && i % 5 == 0) em.addresses.push_back(cp.shared);

            if (cp.secret == 1) {
                if (c == 0 && i == 0) em.secret = "reusedsecret";
                else if (c == 0 && i == 1) em.secret = "reusedsecret";
                else if (c == 0 && i == 2) em.secret = "ab1";
                else em.secret = fresh_secret(1);
            } else if (cp.secret == 2) {
                em.secret = fresh_secret(2);
            }

            std::vector<std::string> words = cp.intro;
            for (int s = 0; s < 6; ++s) {
                words.push_back(cp.synonyms[static_cast<std::size_t>(s)]
                                           [static_cast<std::size_t>((i * 7 + s * 13 + c) % 3)]);
            }
            std::string body = join(words) + ".\n";
            const bool symbol = cp.currency == "USD" && i % 3 == 0;
            const bool grouped = em.amount >= 100000 && i % 2 == 0;
            body += "Transfer " + amount_in_words(em.amount, cp.currency, symbol, grouped) +
                    " to wallet " + em.addresses[0];
            if (em.addresses.size() > 1) body += " or backup wallet " + em.addresses[1];
            body += " within 48 hours.\n";
            if (cp.secret == 1) body += "Your password: " + em.secret + "\n";
            if (cp.secret == 2) body += "Your phone: " + em.secret + "\n";
            body += join(cp.closing) + "\n";
            em.body = std::move(body);

            if (c == 0 && i == E - 1) em.date_valid = false;  // one unparseable Date header
            emails.push_back(std::move(em));
        }
    }

    // optional non-sextortion noise buckets
    std::vector<std::vector<std::string>> other_closings;
    for (int oc = 0; oc < spec.other_campaigns; ++oc) {
        const auto closing = draw_words(rng, vocab, 50);
        other_closings.push_back(closing);
        for (int i = 0; i < spec.other_emails; ++i) {
            EmailPlan em;
            em.id = "n" + std::to_string(oc) + "-" + std::to_string(i);
            em.campaign = C + oc;
            em.date = corpus_start + (i % 100) * util::seconds_per_day + i * 3571 % 86400;
            em.body = join(draw_words(rng, vocab, 10)) + " bitcoin newsletter " +
                      std::to_string(i) + " " + join(closing) + "\n";
            emails.push_back(std::move(em));
        }
    }

    std::ostringstream corpus_out;
    for (const auto& em : emails) {
        nlohmann::json j;
        j["id"] = em.id;
        j["date"] = em.date_valid ? util::format_datetime(em.date) : std::string("yesterday");
        j["language"] = em.campaign < C ? campaigns[static_cast<std::size_t>(em.campaign)].language
                                        : std::string("en");
        j["subject"] = "account notice";
        j["body"] = em.body;
        corpus_out << j.dump() << '\n';
    }

    // ----- ledger ---------------------------------------------------------
    LedgerBuilder ledger;
    const auto day = [](const char* d) { return util::parse_datetime(d); };

    // an old, untagged cluster predating the first sextortion payment
    const std::string old_a = make_address(rng);
    const std::string old_b = make_address(rng);
    const std::string old_sink = make_address(rng);
    ledger.coinbase("cb-old", day("2017-02-01T00:00:00Z"),
                    {{old_a, 500'000'000}, {old_b, 500'000'000}});
    ledger.spend("tx-old-join", day("2017-03-01T00:00:00Z"),
                 {{"cb-old", 0}, {"cb-old", 1}}, {{old_sink, 1'000'000'000 - fee_sat}});

    // exchange entity: hot wallet tagged, deposit joined to it by co-spends
    const std::string exch_hot = make_address(rng);
    const std::string exch_dep = make_address(rng);
    const std::string exch_cold = make_address(rng);

    // victim funding
    struct PayPlan {
        int c = 0;
        int k = 0;
        std::string target;
        Cents usd = 0;
        std::int64_t ts = 0;
        std::string victim;
        bool single_output = false;
    };
    std::vector<PayPlan> pays;
    const std::int64_t pay_base = day("2018-06-10T10:00:00Z");
    for (int c = 0; c < C; ++c) {
        const Campaign& cp = campaigns[static_cast<std::size_t>(c)];
        for (int k = 0; k < P; ++k) {
            PayPlan pp;
            pp.c = c;
            pp.k = k;
            pp.target = cp.addresses[static_cast<std::size_t>(k % 2)];
            pp.usd = to_usd(amount_for(cp, c, k * 3 + 1), cp.currency);
            if (c == 9) {
                // exact RangeFilter boundaries at p = 0.1 over S = [$200, $7,000]
                if (k == 0) pp.usd = 18000;        // $180.00 kept
                else if (k == 1) pp.usd = 17999;   // $179.99 dropped
                else if (k == 2) pp.usd = 770000;  // $7,700.00 kept
                else if (k == 3) pp.usd = 770001;  // $7,700.01 dropped
            }
            pp.ts = pay_base + ((c * 13 + k * 41) % 270) * util::seconds_per_day +
                    (c * 60 + k * 7) % 3600;
            pp.victim = "v" + std::to_string(c) + "-" + std::to_string(k);
            pays.push_back(std::move(pp));
        }
        if (c < 5) {
            PayPlan pp;  // exact-amount payment: single output, no change
            pp.c = c;
            pp.k = P;
            pp.target = cp.addresses[0];
            pp.usd = to_usd(cp.base, cp.currency);
            pp.ts = pay_base + ((c * 13 + 7 * 41) % 270) * util::seconds_per_day + 1800;
            pp.victim = "v" + std::to_string(c) + "-x";
            pp.single_output = true;
            pays.push_back(std::move(pp));
        }
    }
    for (int k = 0; k < 2; ++k) {  // payments to the shared seeds
        for (int j = 0; j < 2; ++j) {
            PayPlan pp;
            pp.c = j == 0 ? 0 : 3;  // swept with campaign 0 / campaign 3
            pp.k = 100 + k;
            pp.target = j == 0 ? shared_addr_0 : shared_addr_1;
            pp.usd = 35000;
            pp.ts = pay_base + (40 + k * 55 + j * 23) * util::seconds_per_day + 900;
            pp.victim = "vs" + std::to_string(j) + "-" + std::to_string(k);
            pays.push_back(std::move(pp));
        }
    }

    std::vector<std::pair<std::string, Satoshi>> victim_outputs;
    for (const auto& pp : pays) {
        const Satoshi pay_sat = cents_to_sat(pp.usd);
        victim_outputs.emplace_back(pp.victim,
                                    pp.single_output ? pay_sat + fee_sat
                                                     : pay_sat + 30'000'000 + fee_sat);
    }
    ledger.coinbase("cb-victims", day("2018-06-01T00:00:00Z"), victim_outputs);

    const std::string cj_in_1 = make_address(rng);
    const std::string cj_in_2 = make_address(rng);
    std::vector<std::pair<std::string, Satoshi>> setup_outputs = {
        {campaigns[0].addresses[0], 5'000'000},   // 0: coinjoin stake
        {campaigns[0].addresses[0], 50'000'000},  // 1..3: collector transfer funding
        {campaigns[1].addresses[0], 50'000'000},
        {campaigns[2].addresses[0], 50'000'000},
        {cj_in_1, 10'000'000},                    // 4
        {cj_in_2, 10'000'000},                    // 5
        {exch_hot, 100'000'000},                  // 6
        {exch_hot, 100'000'000},                  // 7
    };
    // supercluster membership: many addresses joined by one wide co-spend
    std::vector<std::string> super_addrs;
    for (int s = 0; s < 60; ++s) {
        super_addrs.push_back(make_address(rng));
        setup_outputs.emplace_back(super_addrs.back(), 2'000'000);
    }
    const std::string noise_1 = make_address(rng);
    const std::string noise_2 = make_address(rng);
    setup_outputs.emplace_back(noise_1, 20'000'000);
    ledger.coinbase("cb-setup", day("2018-06-02T00:00:00Z"), setup_outputs);

    // victim payments
    std::vector<PlannedPayment> records;
    std::unordered_map<std::string, std::vector<std::pair<std::string, std::uint32_t>>> on_address;
    for (std::size_t pi = 0; pi < pays.size(); ++pi) {
        const auto& pp = pays[pi];
        const Satoshi pay_sat = cents_to_sat(pp.usd);
        const std::string tx_id = "pay-" + std::to_string(pp.c) + "-" + std::to_string(pp.k);
        const Satoshi funded = ledger.utxo_value("cb-victims", static_cast<std::uint32_t>(pi));
        std::vector<std::pair<std::string, Satoshi>> outs = {{pp.target, pay_sat}};
        if (!pp.single_output) outs.emplace_back(pp.victim, funded - pay_sat - fee_sat);
        ledger.spend(tx_id, pp.ts, {{"cb-victims", static_cast<std::uint32_t>(pi)}}, outs);

        PlannedPayment rec;
        rec.tx_id = tx_id;
        rec.index = 0;
        rec.address = pp.target;
        rec.timestamp = pp.ts;
        rec.sat = pay_sat;
        rec.usd = pp.usd;
        rec.range = pp.usd >= 18000 && pp.usd <= 770000;
        rec.moving = !pp.single_output;
        records.push_back(rec);
        on_address[pp.target].emplace_back(tx_id, 0);
    }

    // seed-to-seed collector transfers (campaigns 0..2)
    for (int c = 0; c < 3; ++c) {
        const auto& cp = campaigns[static_cast<std::size_t>(c)];
        const std::string tx_id = "transfer-" + std::to_string(c);
        const std::int64_t ts = day("2018-12-01T14:00:00Z") + c * util::seconds_per_day;
        const Satoshi amount = cents_to_sat(30000);  // $300, inside the window
        const Satoshi change = 50'000'000 - amount - fee_sat;
        ledger.spend(tx_id, ts, {{"cb-setup", static_cast<std::uint32_t>(1 + c)}},
                     {{cp.addresses[1], amount}, {cp.addresses[0], change}});

        PlannedPayment t1;
        t1.tx_id = tx_id;
        t1.index = 0;
        t1.address = cp.addresses[1];
        t1.timestamp = ts;
        t1.sat = amount;
        t1.usd = 30000;
        t1.collector = false;  // sextortion input and sextortion output
        records.push_back(t1);
        PlannedPayment t2 = t1;
        t2.index = 1;
        t2.address = cp.addresses[0];
        t2.sat = change;
        t2.usd = change / 250;
        t2.range = t2.usd >= 18000 && t2.usd <= 770000;
        records.push_back(t2);
        on_address[cp.addresses[1]].emplace_back(tx_id, 0);
        on_address[cp.addresses[0]].emplace_back(tx_id, 1);
    }

    // CoinJoin-shaped transaction: equal outputs, no union when excluded
    const std::string cjo_1 = make_address(rng), cjo_2 = make_address(rng),
                      cjo_3 = make_address(rng), cjc_1 = make_address(rng),
                      cjc_2 = make_address(rng);
    ledger.spend("tx-coinjoin", day("2018-12-20T12:00:00Z"),
                 {{"cb-setup", 0}, {"cb-setup", 4}, {"cb-setup", 5}},
                 {{cjo_1, 4'000'000},
                  {cjo_2, 4'000'000},
                  {cjo_3, 4'000'000},
                  {cjc_1, 6'000'000},
                  {cjc_2, 6'999'000}});

    // supercluster co-spend touching campaign 5's second seed
    {
        std::vector<std::pair<std::string, std::uint32_t>> ins;
        for (int s = 0; s < 60; ++s) ins.emplace_back("cb-setup", static_cast<std::uint32_t>(8 + s));
        // one payment UTXO of A(5,1) joins the wide spend
        std::string joined_ref;
        for (const auto& [tx, idx] : on_address[campaigns[5].addresses[1]]) {
            joined_ref = tx;
            ins.emplace_back(tx, idx);
            break;
        }
        Satoshi total = 0;
        for (const auto& [tx, idx] : ins) total += ledger.utxo_value(tx, idx);
        const std::string super_sink = make_address(rng);
        ledger.spend("tx-super", day("2019-03-20T00:00:00Z"), ins, {{super_sink, total - fee_sat}});
        on_address[campaigns[5].addresses[1]].erase(on_address[campaigns[5].addresses[1]].begin());
    }

    // campaign 8: second seed co-spends with the exchange hot wallet
    {
        auto& list = on_address[campaigns[8].addresses[1]];
        if (list.empty()) throw InternalError("fixture: campaign 8 plan broken");
        const auto [ptx, pidx] = list.front();
        list.erase(list.begin());
        const Satoshi v = ledger.utxo_value(ptx, pidx);
        // find the payment's timestamp for the designed 48h delay
        std::int64_t pts = 0;
        for (const auto& r : records) {
            if (r.tx_id == ptx && r.index == pidx) pts = r.timestamp;
        }
        ledger.spend("tx-exch-cospend", pts + 48 * 3600, {{ptx, pidx}, {"cb-setup", 6}},
                     {{exch_dep, v + 100'000'000 - fee_sat}});
    }

    // sweeps: join each campaign's funded seeds, then move on after a delay
    struct SweepPlan {
        std::string tx_id;
        std::int64_t ts = 0;
        Satoshi total_in = 0;
        Satoshi col_out = 0;
        std::string col;
    };
    std::map<int, SweepPlan> sweeps;
    auto sweep_campaign = [&](const std::vector<int>& cs, const std::string& col_addr) {
        std::vector<std::pair<std::string, std::uint32_t>> ins;
        std::int64_t latest = 0;
        for (int c : cs) {
            for (const auto& addr :
                 {campaigns[static_cast<std::size_t>(c)].addresses[0],
                  campaigns[static_cast<std::size_t>(c)].addresses[1]}) {
                for (const auto& [tx, idx] : on_address[addr]) ins.emplace_back(tx, idx);
                on_address[addr].clear();
            }
            if (c == 0) {
                for (const auto& [tx, idx] : on_address[shared_addr_0]) ins.emplace_back(tx, idx);
                on_address[shared_addr_0].clear();
            }
            if (c == 3) {
                for (const auto& [tx, idx] : on_address[shared_addr_1]) ins.emplace_back(tx, idx);
                on_address[shared_addr_1].clear();
            }
        }
        if (ins.empty()) throw InternalError("fixture: sweep without inputs");
        Satoshi total = 0;
        for (const auto& [tx, idx] : ins) total += ledger.utxo_value(tx, idx);
        for (const auto& rec : records) {
            for (const auto& [tx, idx] : ins) {
                if (rec.tx_id == tx && rec.index == idx) latest = std::max(latest, rec.timestamp);
            }
        }
        const int c0 = cs.front();
        SweepPlan plan;
        plan.tx_id = "sweep-" + std::to_string(c0);
        plan.ts = latest + (10 + 10 * c0) * 3600;
        plan.total_in = total;
        plan.col_out = total - fee_sat;
        plan.col = col_addr;
        ledger.spend(plan.tx_id, plan.ts, ins, {{col_addr, plan.col_out}});
        for (int c : cs) sweeps[c] = plan;
    };

    std::map<int, std::string> col_addr;
    for (int c = 0; c <= 14 && c < C; ++c) {
        if (c == 7) continue;  // joint with 6
        col_addr[c] = make_address(rng);
    }
    for (int c = 0; c <= 14 && c < C; ++c) {
        if (c == 7) continue;
        if (c == 6 && C > 7) sweep_campaign({6, 7}, col_addr[6]);
        else if (c == 8) {
            // only the first seed; the second seed's coins went to the exchange
            std::vector<std::pair<std::string, std::uint32_t>> ins;
            std::int64_t latest = 0;
            for (const auto& [tx, idx] : on_address[campaigns[8].addresses[0]]) {
                ins.emplace_back(tx, idx);
            }
            on_address[campaigns[8].addresses[0]].clear();
            Satoshi total = 0;
            for (const auto& [tx, idx] : ins) total += ledger.utxo_value(tx, idx);
            for (const auto& rec : records) {
                for (const auto& [tx, idx] : ins) {
                    if (rec.tx_id == tx && rec.index == idx) latest = std::max(latest, rec.timestamp);
                }
            }
            SweepPlan plan;
            plan.tx_id = "sweep-8";
            plan.ts = latest + 90 * 3600;
            plan.total_in = total;
            plan.col_out = total - fee_sat;
            plan.col = col_addr[8];
            ledger.spend(plan.tx_id, plan.ts, ins, {{plan.col, plan.col_out}});
            sweeps[8] = plan;
        } else {
            sweep_campaign({c}, col_addr[c]);
        }
    }

    // collector spends: one hop onward, 60% toward the exchange deposit
    std::map<int, std::string> other_addr;
    std::map<int, std::pair<Satoshi, Satoshi>> col_split;  // c -> (out0, out1)
    for (const auto& [c, plan] : sweeps) {
        if (plan.tx_id != "sweep-" + std::to_string(c)) continue;  // 7 aliases sweep-6
        other_addr[c] = make_address(rng);
        const Satoshi spendable = plan.col_out - fee_sat;
        Satoshi out0 = 0, out1 = 0;
        std::vector<std::pair<std::string, Satoshi>> outs;
        if (c == 4) {
            out0 = spendable / 2;
            out1 = spendable - out0;
            outs = {{old_a, out0}, {other_addr[c], out1}};
        } else {
            out0 = spendable * 6 / 10;
            out1 = spendable - out0;
            outs = {{exch_dep, out0}, {other_addr[c], out1}};
        }
        col_split[c] = {out0, out1};
        ledger.spend("colspend-" + std::to_string(c), plan.ts + 24 * 3600,
                     {{plan.tx_id, 0}}, outs);
    }

    // exchange-internal movement joins deposit and hot wallets
    ledger.spend("tx-exch-internal", day("2019-04-01T00:00:00Z"),
                 {{"colspend-0", 0}, {"cb-setup", 7}},
                 {{exch_cold, col_split[0].first + 100'000'000 - fee_sat}});

    // unrelated background activity
    ledger.spend("tx-noise", day("2018-10-10T00:00:00Z"),
                 {{"cb-setup", static_cast<std::uint32_t>(8 + 60)}},
                 {{noise_2, 10'000'000}, {noise_1, 10'000'000 - fee_sat}});

    // ----- ground truth ---------------------------------------------------
    nlohmann::json gt;

    {
        nlohmann::json groups = nlohmann::json::object();
        for (const auto& em : emails) {
            groups[std::to_string(em.campaign)].push_back(em.id);
        }
        gt["bucketing"]["groups"] = std::move(groups);
        gt["bucketing"]["bucket_count"] = C + spec.other_campaigns;
    }

    {
        std::set<std::string> all_seeds;
        for (const auto& em : emails) {
            for (const auto& a : em.addresses) all_seeds.insert(a);
        }
        std::set<std::string> funded;
        for (const auto& rec : records) funded.insert(rec.address);
        gt["seeds"]["all"] = all_seeds;
        gt["seeds"]["funded"] = funded;
    }

    {
        // partitions over input addresses, by plan
        auto partition_json = [&](bool exclude_coinjoin) {
            std::map<std::string, int> group_of;
            int next = 0;
            auto unite = [&](const std::vector<std::string>& addrs) {
                int target = -1;
                for (const auto& a : addrs) {
                    if (group_of.count(a)) {
                        target = group_of[a];
                        break;
                    }
                }
                if (target == -1) target = next++;
                std::set<int> merged;
                for (const auto& a : addrs) {
                    if (group_of.count(a) && group_of[a] != target) merged.insert(group_of[a]);
                }
                for (auto& [a, g] : group_of) {
                    if (merged.count(g)) g = target;
                }
                for (const auto& a : addrs) group_of[a] = target;
            };
            for (const auto& tx : ledger.txs()) {
                if (tx.inputs.empty()) continue;
                if (exclude_coinjoin && tx.tx_id == "tx-coinjoin") {
                    for (const auto& [addr, v, s, i] : tx.inputs) unite({addr});
                    continue;
                }
                std::vector<std::string> addrs;
                for (const auto& [addr, v, s, i] : tx.inputs) addrs.push_back(addr);
                unite(addrs);
            }
            std::map<int, std::set<std::string>> by_group;
            for (const auto& [a, g] : group_of) by_group[g].insert(a);
            std::vector<std::vector<std::string>> partition;
            for (auto& [g, members] : by_group) {
                partition.emplace_back(members.begin(), members.end());
            }
            std::sort(partition.begin(), partition.end());
            return partition;
        };
        gt["clustering"]["with_exclusion"] = partition_json(true);
        gt["clustering"]["without_exclusion"] = partition_json(false);
        gt["clustering"]["coinjoin_tx"] = "tx-coinjoin";
    }

    {
        // expansion: full clusters except the supercluster and the tagged one
        const auto partition = gt["clustering"]["with_exclusion"];
        std::set<std::string> funded(gt["seeds"]["funded"].begin(), gt["seeds"]["funded"].end());
        std::set<std::string> expanded;
        std::set<int> touched;
        int excluded = 0;
        std::size_t unclustered = 0;
        for (const auto& seed : funded) {
            int found = -1;
            for (std::size_t g = 0; g < partition.size(); ++g) {
                for (const auto& a : partition[g]) {
                    if (a.get<std::string>() == seed) {
                        found = static_cast<int>(g);
                        break;
                    }
                }
                if (found >= 0) break;
            }
            if (found < 0) {
                ++unclustered;
                expanded.insert(seed);
                continue;
            }
            const auto& members = partition[static_cast<std::size_t>(found)];
            const bool is_super = members.size() > 50;
            bool is_tagged = false;
            for (const auto& a : members) {
                if (a.get<std::string>() == exch_hot) is_tagged = true;
            }
            touched.insert(found);
            if (is_super || is_tagged) {
                expanded.insert(seed);
            } else {
                for (const auto& a : members) expanded.insert(a.get<std::string>());
            }
        }
        for (const auto& members : partition) {
            bool has_seed = false;
            for (const auto& a : members) {
                if (funded.count(a.get<std::string>())) has_seed = true;
            }
            if (!has_seed) continue;
            bool is_tagged = false;
            for (const auto& a : members) {
                if (a.get<std::string>() == exch_hot) is_tagged = true;
            }
            if (members.size() > 50 || is_tagged) ++excluded;
        }
        gt["expansion"]["addresses"] = expanded;
        gt["expansion"]["seeds_unclustered"] = unclustered;
        gt["expansion"]["clusters_touched"] = touched.size();
        gt["expansion"]["clusters_excluded"] = excluded;
    }

    gt["ransom_window"] = {{"lo_cents", 18000}, {"hi_cents", 770000}};

    {
        nlohmann::json recs = nlohmann::json::array();
        std::size_t n12 = 0, n123 = 0;
        Cents usd12 = 0, usd123 = 0;
        Satoshi sat12 = 0, sat123 = 0;
        std::map<std::string, std::array<std::int64_t, 3>> monthly;  // usd, sat, count
        for (const auto& r : records) {
            recs.push_back({{"ref", r.ref()},
                            {"address", r.address},
                            {"timestamp", util::format_datetime(r.timestamp)},
                            {"value_sat", r.sat},
                            {"value_usd_cents", r.usd},
                            {"collector", r.collector},
                            {"range", r.range},
                            {"moving", r.moving}});
            if (r.kept_12()) {
                ++n12;
                usd12 += r.usd;
                sat12 += r.sat;
                auto& m = monthly[util::format_month(r.timestamp)];
                m[0] += r.usd;
                m[1] += r.sat;
                m[2] += 1;
            }
            if (r.kept_123()) {
                ++n123;
                usd123 += r.usd;
                sat123 += r.sat;
            }
        }
        gt["payments"]["records"] = std::move(recs);
        gt["payments"]["combo_1_2"] = {{"count", n12}, {"usd_cents", usd12}, {"sat", sat12}};
        gt["payments"]["combo_1_2_3"] = {{"count", n123}, {"usd_cents", usd123}, {"sat", sat123}};
        nlohmann::json months = nlohmann::json::object();
        for (const auto& [m, v] : monthly) {
            months[m] = {{"usd_cents", v[0]}, {"sat", v[1]}, {"payments", v[2]}};
        }
        gt["payments"]["monthly_1_2"] = std::move(months);
    }

    // holding + flows ground truth below needs the spend map of the ledger
    {
        std::map<std::string, std::pair<std::string, std::int64_t>> spender;  // ref -> (tx, ts)
        for (const auto& tx : ledger.txs()) {
            for (const auto& [addr, v, src, idx] : tx.inputs) {
                spender[src + ":" + std::to_string(idx)] = {tx.tx_id, tx.timestamp};
            }
        }

        nlohmann::json durations = nlohmann::json::object();
        std::vector<double> hours_list;
        std::map<std::int64_t, double> bins;
        Satoshi spent_sat = 0;
        std::size_t unspent = 0;
        double mean_num = 0.0;
        for (const auto& r : records) {
            if (!r.kept_12()) continue;
            auto it = spender.find(r.ref());
            if (it == spender.end()) {
                ++unspent;
                continue;
            }
            const double hours = static_cast<double>(it->second.second - r.timestamp) / 3600.0;
            durations[r.ref()] = hours;
            hours_list.push_back(hours);
            mean_num += hours;
            spent_sat += r.sat;
            bins[static_cast<std::int64_t>(hours / 10) * 10] += static_cast<double>(r.sat) / 1e8;
        }
        std::sort(hours_list.begin(), hours_list.end());
        nlohmann::json hist = nlohmann::json::object();
        for (const auto& [b, v] : bins) hist[std::to_string(b)] = v;
        gt["holding"]["durations_hours"] = std::move(durations);
        gt["holding"]["unspent_count"] = unspent;
        gt["holding"]["total_spent_sat"] = spent_sat;
        gt["holding"]["histogram"] = std::move(hist);
        if (!hours_list.empty()) {
            gt["holding"]["mean_days"] = mean_num / static_cast<double>(hours_list.size()) / 24.0;
            const std::size_t mid = hours_list.size() / 2;
            gt["holding"]["median_days"] =
                (hours_list.size() % 2 ? hours_list[mid]
                                       : (hours_list[mid - 1] + hours_list[mid]) / 2.0) /
                24.0;
        }

        // flows: mirror the proportional attribution over the planned spends
        std::map<std::string, double> traced;       // output ref -> traced btc
        std::map<std::string, double> level0;       // address -> btc
        for (const auto& r : records) {
            if (!r.kept_12()) continue;
            traced[r.ref()] += static_cast<double>(r.sat) / 1e8;
            level0[r.address] += static_cast<double>(r.sat) / 1e8;
        }
        std::map<std::string, std::string> owner;  // ref -> address
        std::map<std::string, Satoshi> out_value;
        std::map<std::string, const PlannedTx*> tx_by_id;
        for (const auto& tx : ledger.txs()) {
            tx_by_id[tx.tx_id] = &tx;
            for (std::size_t i = 0; i < tx.outputs.size(); ++i) {
                const std::string ref = tx.tx_id + ":" + std::to_string(i);
                owner[ref] = tx.outputs[i].first;
                out_value[ref] = tx.outputs[i].second;
            }
        }

        const std::set<std::string> tagged_addrs = {exch_hot, exch_dep,
                                                    campaigns[8].addresses[1]};
        auto expand = [&](const std::map<std::string, double>& frontier) {
            std::map<std::string, double> next_frontier;
            std::map<std::string, double> nodes;
            for (const auto& [ref, btc] : frontier) {
                const std::string& own = owner.at(ref);
                if (tagged_addrs.count(own)) continue;
                auto it = spender.find(ref);
                if (it == spender.end()) continue;
                const PlannedTx* tx = tx_by_id.at(it->second.first);
                Satoshi total_in = 0;
                for (const auto& [a, v, s, i] : tx->inputs) total_in += v;
                for (std::size_t i = 0; i < tx->outputs.size(); ++i) {
                    const double share = btc * (static_cast<double>(tx->outputs[i].second) /
                                                static_cast<double>(total_in));
                    if (share <= 0.0) continue;
                    const std::string oref = tx->tx_id + ":" + std::to_string(i);
                    next_frontier[oref] += share;
                    nodes[tx->outputs[i].first] += share;
                }
            }
            return std::make_pair(next_frontier, nodes);
        };

        std::map<std::string, double> frontier = traced;
        nlohmann::json levels = nlohmann::json::array();
        nlohmann::json l0 = nlohmann::json::object();
        for (const auto& [a, v] : level0) l0[a] = v;
        levels.push_back(l0);
        std::map<std::string, double> depth1, depth2;
        {
            auto [f1, n1] = expand(frontier);
            depth1 = n1;
            nlohmann::json l1 = nlohmann::json::object();
            for (const auto& [a, v] : n1) l1[a] = v;
            levels.push_back(l1);
            auto [f2, n2] = expand(f1);
            depth2 = n2;
            nlohmann::json l2 = nlohmann::json::object();
            for (const auto& [a, v] : n2) l2[a] = v;
            levels.push_back(l2);
        }
        gt["flows"]["levels"] = std::move(levels);
        gt["flows"]["tagged_btc"] = depth2.count(exch_dep) ? depth2[exch_dep] : 0.0;
        gt["flows"]["tagged_depth0_address"] = campaigns[8].addresses[1];
        {
            nlohmann::json unspent_addrs = nlohmann::json::array();
            for (int c = 15; c < C; ++c) {
                unspent_addrs.push_back(campaigns[static_cast<std::size_t>(c)].addresses[0]);
                unspent_addrs.push_back(campaigns[static_cast<std::size_t>(c)].addresses[1]);
            }
            gt["flows"]["unspent_depth0_addresses"] = std::move(unspent_addrs);
        }
        const double cashout_btc = depth2.count(old_a) ? depth2[old_a] : 0.0;
        gt["flows"]["cashout_btc"] = cashout_btc;
        const double rev_btc =
            static_cast<double>(gt["payments"]["combo_1_2"]["sat"].get<Satoshi>()) / 1e8;
        gt["flows"]["cashout_fraction"] = rev_btc > 0 ? cashout_btc / rev_btc : 0.0;
    }

    {
        // linkage: shared addresses bridge campaigns 0..3 and 3..5; the
        // campaign 6/7 joint sweep shares a cluster
        nlohmann::json edges = nlohmann::json::array();
        const std::vector<int> sh0 = {0, 1, 2, 3};
        for (std::size_t i = 0; i < sh0.size(); ++i) {
            for (std::size_t j = i + 1; j < sh0.size(); ++j) {
                edges.push_back({sh0[i], sh0[j], "shared_address", 1});
            }
        }
        const std::vector<int> sh1 = {3, 4, 5};
        for (std::size_t i = 0; i < sh1.size(); ++i) {
            for (std::size_t j = i + 1; j < sh1.size(); ++j) {
                edges.push_back({sh1[i], sh1[j], "shared_address", 1});
            }
        }
        gt["linkage"]["expected_shared_address_edges"] = std::move(edges);
        gt["linkage"]["components"] = {{0, 1, 2, 3, 4, 5}, {6, 7}};
        // linkage covers sextortion buckets only, so noise emails don't count
        gt["linkage"]["giant_email_share"] = 6.0 * E / (static_cast<double>(C) * E);
    }

    {
        std::map<std::string, std::vector<double>> by_lang;
        for (const auto& em : emails) {
            if (em.campaign >= C) continue;
            by_lang[campaigns[static_cast<std::size_t>(em.campaign)].language].push_back(
                static_cast<double>(em.usd) / 100.0);
        }
        nlohmann::json groups = nlohmann::json::object();
        for (const auto& [lang, vals] : by_lang) {
            double sum = 0.0;
            for (double v : vals) sum += v;
            groups[lang] = {{"n", vals.size()}, {"mean", sum / static_cast<double>(vals.size())}};
        }
        gt["stats"]["groups"] = std::move(groups);
        if (C >= 8) gt["stats"]["zero_variance_group"] = "no";
    }

    // breach material: candidates in campaigns c % 4 == 0 land in the lists
    std::vector<std::string> breach_1, breach_2;
    std::size_t breached_candidates = 0;
    {
        std::map<std::string, std::size_t> counts;
        std::map<std::string, int> pw_campaign;
        for (const auto& em : emails) {
            if (em.secret.empty()) continue;
            ++counts[em.secret];
            pw_campaign[em.secret] = em.campaign;
        }
        std::size_t candidates = 0;
        for (const auto& [pw, count] : counts) {
            std::size_t cps = 0;
            for (unsigned char ch : pw) {
                if ((ch & 0xc0) != 0x80) ++cps;
            }
            if (count != 1 || cps < 4) continue;
            ++candidates;
            const int c = pw_campaign[pw];
            if (c < C && campaigns[static_cast<std::size_t>(c)].secret == 1 && c % 4 == 0) {
                ++breached_candidates;
                (c % 8 == 0 ? breach_1 : breach_2).push_back(pw);
            }
        }
        for (int k = 0; k < 200; ++k) breach_1.push_back("junk-" + join(draw_words(rng, vocab, 1)) + std::to_string(k));
        for (int k = 0; k < 150; ++k) breach_2.push_back("fill-" + join(draw_words(rng, vocab, 1)) + std::to_string(k));
        std::sort(breach_1.begin(), breach_1.end());
        std::sort(breach_2.begin(), breach_2.end());
        gt["breach"]["candidates"] = candidates;
        gt["breach"]["breached"] = breached_candidates;
    }

    // ----- emit files -----------------------------------------------------
    util::write_file((out / "corpus.jsonl").string(), corpus_out.str());
    util::write_file((out / "ledger.jsonl").string(), ledger.to_jsonl());

    {
        std::ostringstream prices;
        prices << "date,usd_per_btc\n";
        for (std::int64_t d = util::parse_date("2017-01-01"); d <= util::parse_date("2019-06-30");
             ++d) {
            prices << util::format_date(d * util::seconds_per_day) << ","
                   << util::format_scaled_decimal(price_e4, 4) << "\n";
        }
        util::write_file((out / "prices.csv").string(), prices.str());
    }
    {
        std::ostringstream rates;
        rates << "date,currency,usd_per_unit\n";
        for (std::int64_t d = util::parse_date("2018-08-20"); d <= util::parse_date("2019-03-01");
             ++d) {
            const std::string ds = util::format_date(d * util::seconds_per_day);
            rates << ds << ",EUR,1.140000\n" << ds << ",NOK,0.115000\n";
        }
        util::write_file((out / "rates.csv").string(), rates.str());
    }
    util::write_file((out / "tags.csv").string(),
                     "address,tag,source\n" + exch_hot + ",exchange-one,fixture\n");
    {
        std::ostringstream labels;
        labels << "bucket_id,category,campaign\n";
        for (int c = 0; c < C; ++c) {
            labels << c << ",sextortion," << campaigns[static_cast<std::size_t>(c)].name << "\n";
        }
        for (int oc = 0; oc < spec.other_campaigns; ++oc) {
            labels << (C + oc) << ",other,noise" << oc << "\n";
        }
        util::write_file((out / "labels.csv").string(), labels.str());
    }
    {
        std::string w1;
        for (const auto& pw : breach_1) w1 += pw + "\n";
        util::write_file((out / "breach_1.txt").string(), w1);
        std::string w2 = "\xef\xbb\xbf";  // BOM-prefixed list
        for (const auto& pw : breach_2) w2 += pw + "\n";
        util::write_file((out / "breach_2.txt").string(), w2);
    }

    {
        PipelineConfig cfg;
        cfg.corpus = (out / "corpus.jsonl").string();
        cfg.ledger = (out / "ledger.jsonl").string();
        cfg.prices = (out / "prices.csv").string();
        cfg.rates = (out / "rates.csv").string();
        cfg.tags = (out / "tags.csv").string();
        cfg.labels = (out / "labels.csv").string();
        cfg.breach_files = {(out / "breach_1.txt").string(), (out / "breach_2.txt").string()};
        cfg.supercluster_limit = 50;
        cfg.breach_fraction = 1.0;  // exact ground-truth match rate
        cfg.seed = seed;
        cfg.save_file((out / "fixture.conf").string());
    }

    util::write_file((out / "ground_truth.json").string(), gt.dump(2) + "\n");
}

}  // namespace spamflow::pipeline
