#pragma once

#include "segcrawl/bench.hpp"
#include "segcrawl/bounded_queue.hpp"
#include "segcrawl/errors.hpp"
#include "segcrawl/extraction.hpp"
#include "segcrawl/fetcher.hpp"
#include "segcrawl/fixture_server.hpp"
#include "segcrawl/http_fetcher.hpp"
#include "segcrawl/makespan.hpp"
#include "segcrawl/output.hpp"
#include "segcrawl/pipeline.hpp"
#include "segcrawl/report.hpp"
#include "segcrawl/sim_fetcher.hpp"
#include "segcrawl/types.hpp"
#include "segcrawl/url.hpp"
