// Benchmark of the OpenMP kernels against their serial references on a
// synthetic corpus: window accumulation, roll-call support counting and
// loyalty counting. Results are checked for equality before timing is
// reported.

#include <chrono>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <CLI11.hpp>

#include "partynet/simnet.hpp"
#include "partynet/support.hpp"

using namespace partynet;

namespace {

double time_ms(const auto& fn, int repeat) {
    using clock = std::chrono::steady_clock;
    double best = 1e300;
    for (int r = 0; r < repeat; ++r) {
        auto t0 = clock::now();
        fn();
        auto t1 = clock::now();
        best = std::min(best,
                        std::chrono::duration<double, std::milli>(t1 - t0).count());
    }
    return best;
}

void report(const char* name, double serial_ms, double parallel_ms) {
    std::printf("%-24s serial %10.2f ms   parallel %10.2f ms   speedup %.2fx\n", name,
                serial_ms, parallel_ms, serial_ms / parallel_ms);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Serial vs OpenMP kernel benchmark"};
    int n_sessions = 20000;
    int n_actors = 34;
    int n_votes = 1000000;
    int repeat = 3;
    app.add_option("--sessions", n_sessions, "Sessions in the synthetic window");
    app.add_option("--actors", n_actors, "Actors in the index");
    app.add_option("--votes", n_votes, "Vote records for the support kernels");
    app.add_option("--repeat", repeat, "Repetitions; best time wins");
    CLI11_PARSE(app, argc, argv);

#ifdef _OPENMP
    std::printf("OpenMP enabled, max threads %d\n", omp_get_max_threads());
#else
    std::printf("OpenMP disabled; both columns run the serial path\n");
#endif

    std::mt19937 rng(20240117);

    // One big window of sessions with random recommendation patterns.
    std::vector<std::string> codes;
    for (int a = 0; a < n_actors - 1; ++a)
        codes.push_back("P" + std::to_string(a));
    ActorIndex index(std::move(codes));

    Window window;
    window.label = "bench";
    window.start = make_date(1998, 1, 1);
    window.end = make_date(1998, 12, 31);

    std::bernoulli_distribution speaks(0.7);
    std::bernoulli_distribution yes(0.5);
    std::vector<SessionAgreement> sessions;
    sessions.reserve(size_t(n_sessions));
    std::map<std::string, VoteValue> gov_recs;
    for (int s = 0; s < n_sessions; ++s) {
        std::string sid = "S" + std::to_string(s);
        window.session_ids.insert(sid);
        std::map<std::string, VoteValue> recs;
        recs[std::string(kGovActor)] = yes(rng) ? VoteValue::Yes : VoteValue::No;
        for (int a = 0; a < index.size(); ++a) {
            if (index.code(a) != kGovActor && speaks(rng))
                recs[index.code(a)] = yes(rng) ? VoteValue::Yes : VoteValue::No;
        }
        gov_recs[sid] = recs[std::string(kGovActor)];
        sessions.push_back(session_agreement(sid, recs, index));
    }

    AgreementWindow serial_aw, parallel_aw;
    const double acc_serial =
        time_ms([&] { serial_aw = accumulate_serial(index, sessions, window); }, repeat);
    const double acc_parallel =
        time_ms([&] { parallel_aw = accumulate(index, sessions, window); }, repeat);
    if (serial_aw.agreement != parallel_aw.agreement ||
        serial_aw.co_recommended != parallel_aw.co_recommended) {
        std::fprintf(stderr, "accumulate mismatch between serial and parallel\n");
        return 1;
    }
    report("accumulate", acc_serial, acc_parallel);

    // Vote records spread over the same sessions.
    std::uniform_int_distribution<int> pick_session(0, n_sessions - 1);
    std::uniform_int_distribution<int> pick_party(0, n_actors - 2);
    std::bernoulli_distribution follows(0.6);
    std::vector<VoteRecord> votes;
    votes.reserve(size_t(n_votes));
    std::vector<Recommendation> party_recs;
    for (int s = 0; s < n_sessions; ++s) {
        for (int a = 0; a < n_actors - 1; ++a)
            party_recs.push_back({"S" + std::to_string(s), "P" + std::to_string(a),
                                  yes(rng) ? VoteValue::Yes : VoteValue::No});
    }
    for (int v = 0; v < n_votes; ++v) {
        VoteRecord rec;
        const int s = pick_session(rng);
        rec.session_id = "S" + std::to_string(s);
        rec.date = window.start;
        rec.bill_id = "B1";
        rec.voter_id = v;
        rec.voter_name = "voter";
        rec.party = "P" + std::to_string(pick_party(rng));
        const VoteValue gov = gov_recs[rec.session_id];
        rec.vote = follows(rng) ? gov
                                : (gov == VoteValue::Yes ? VoteValue::No : VoteValue::Yes);
        votes.push_back(std::move(rec));
    }

    std::optional<double> rc_serial_value, rc_parallel_value;
    const double rc_serial =
        time_ms([&] { rc_serial_value = roll_call_support_serial(votes, gov_recs, window); },
                repeat);
    const double rc_parallel =
        time_ms([&] { rc_parallel_value = roll_call_support(votes, gov_recs, window); },
                repeat);
    if (rc_serial_value != rc_parallel_value) {
        std::fprintf(stderr, "roll_call_support mismatch\n");
        return 1;
    }
    report("roll_call_support", rc_serial, rc_parallel);

    LoyaltyTable loy_serial, loy_parallel;
    const double ly_serial =
        time_ms([&] { loy_serial = loyalty_rates_serial(votes, party_recs, {}, 0); },
                repeat);
    const double ly_parallel =
        time_ms([&] { loy_parallel = loyalty_rates(votes, party_recs, {}, 0); }, repeat);
    for (size_t i = 0; i < loy_serial.rows.size(); ++i) {
        const auto& a = loy_serial.rows[i];
        const auto& b = loy_parallel.rows[i];
        if (a.party != b.party || a.total_votes != b.total_votes ||
            a.loyal_votes != b.loyal_votes) {
            std::fprintf(stderr, "loyalty_rates mismatch\n");
            return 1;
        }
    }
    report("loyalty_rates", ly_serial, ly_parallel);
    return 0;
}
