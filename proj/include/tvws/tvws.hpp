#ifndef TVWS_TVWS_HPP
#define TVWS_TVWS_HPP

#include "tvws/config.hpp"
#include "tvws/detection_config.hpp"
#include "tvws/equilibria.hpp"
#include "tvws/errors.hpp"
#include "tvws/evolve.hpp"
#include "tvws/game.hpp"
#include "tvws/io.hpp"
#include "tvws/model.hpp"
#include "tvws/oracle.hpp"
#include "tvws/report.hpp"
#include "tvws/types.hpp"

#endif
