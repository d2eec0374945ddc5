#ifndef CUTROUTE_CUTROUTE_HPP
#define CUTROUTE_CUTROUTE_HPP

#include "errors.hpp"
#include "graph.hpp"
#include "random.hpp"
#include "spanning_tree.hpp"
#include "routing.hpp"
#include "predictor.hpp"
#include "instances.hpp"
#include "orders.hpp"
#include "verify.hpp"
#include "experiment.hpp"
#include "report_io.hpp"
#include "sweep.hpp"
#include "config.hpp"

#endif // CUTROUTE_CUTROUTE_HPP
