#pragma once

#include "dbdesc/connector.hpp"
#include "dbdesc/schema.hpp"

namespace dbdesc::detail {

SchemaSnapshot introspect_sqlite(Connector& connector, const std::string& db_id);
SchemaSnapshot introspect_mysql(Connector& connector, const std::string& db_id);
SchemaSnapshot introspect_postgres(Connector& connector, const std::string& db_id);

} // namespace dbdesc::detail
