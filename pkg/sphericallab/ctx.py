import sphericallab.log
import sphericallab.options

master = None
log: "sphericallab.log.Log" = sphericallab.log.Log()
options: "sphericallab.options.Options" = sphericallab.options.Options()
