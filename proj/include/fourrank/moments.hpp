#pragma once

#include "fourrank/moments/campaign.hpp"
#include "fourrank/moments/statistics.hpp"
#include "fourrank/moments/sums.hpp"
#include "fourrank/moments/table.hpp"
